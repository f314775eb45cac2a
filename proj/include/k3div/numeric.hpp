#ifndef K3DIV_NUMERIC_HPP_
#define K3DIV_NUMERIC_HPP_

#include <gmpxx.h>

#include <string>
#include <vector>

namespace k3div {

// All lattice arithmetic runs on unbounded integers/rationals.
using Int = mpz_class;
using Rat = mpq_class;

using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

inline Rat to_rat(const Int& z) { return Rat(z); }

inline QVec to_qvec(const IVec& v) {
  QVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
  return out;
}

// Representative of r mod m*Z in [0, m), m > 0 rational.
inline Rat mod_into(const Rat& r, const Rat& m) {
  Rat q = r / m;
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  Rat res = r - Rat(fl) * m;
  res.canonicalize();
  return res;
}

// q-values live in Q/2Z, b-values in Q/Z.
inline Rat mod_2z(const Rat& r) { return mod_into(r, Rat(2)); }
inline Rat mod_1z(const Rat& r) { return mod_into(r, Rat(1)); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int mod_floor(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Exact serialized form: "p" or "p/q", canonical sign on the numerator.
inline std::string frac_str(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_str();
}

inline std::string int_str(const Int& z) { return z.get_str(); }

}  // namespace k3div

#endif
