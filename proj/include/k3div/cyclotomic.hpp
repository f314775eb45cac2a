#ifndef K3DIV_CYCLOTOMIC_HPP_
#define K3DIV_CYCLOTOMIC_HPP_

#include <cstdint>
#include <vector>

#include "k3div/numeric.hpp"

namespace k3div {

// Coefficients of the n-th cyclotomic polynomial, ascending degree.
std::vector<Int> cyclotomic_polynomial(long n);

// Z[zeta_N] modelled as Z[x]/Phi_N(x). Elements are coefficient vectors of
// degree < deg Phi_N. Equality of reduced forms is equality in the ring.
class CyclotomicRing {
 public:
  using Elem = std::vector<Int>;

  explicit CyclotomicRing(long n);

  long order() const { return n_; }
  size_t degree() const { return phi_.size() - 1; }

  Elem zero() const { return Elem(degree(), Int(0)); }
  Elem scalar(const Int& c) const;
  Elem root_power(long k) const;  // zeta_N^k

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scale(const Elem& a, const Int& c) const;

  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  bool is_zero(const Elem& a) const;

 private:
  Elem reduce(std::vector<Int> poly) const;

  long n_;
  std::vector<Int> phi_;
};

// Signature mod 8 of a nondegenerate finite quadratic form given by the
// histogram of its values: histogram[k] counts elements x with
// q(x) = k/M mod 2, where the histogram has size 2M. Solves
//   sum_x e^{i pi q(x)} = sqrt(|A|) * zeta_8^sigma
// exactly in a cyclotomic ring; no floating point is involved.
int gauss_signature_mod8(const std::vector<long long>& histogram, const Int& group_order);

}  // namespace k3div

#endif
