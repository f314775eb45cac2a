#ifndef K3DIV_GF2K_HPP_
#define K3DIV_GF2K_HPP_

#include <cstdint>
#include <string>

namespace k3div {

// Finite field F_{2^k}, k <= 16, as F_2[x]/(modulus). Elements are bitmasks
// of polynomial coefficients; g denotes the class of x.
class GF2k {
 public:
  using Elem = uint32_t;

  GF2k() : k_(1), modulus_(0b10) {}
  GF2k(int k, uint32_t modulus);

  // Field of the given degree over the smallest irreducible modulus (by the
  // integer encoding of the coefficient mask).
  static GF2k with_degree(int k);

  int degree() const { return k_; }
  uint32_t modulus_mask() const { return modulus_; }
  uint64_t size() const { return uint64_t{1} << k_; }

  Elem add(Elem a, Elem b) const { return a ^ b; }
  Elem mul(Elem a, Elem b) const;
  Elem pow(Elem a, uint64_t e) const;
  Elem inv(Elem a) const;
  Elem sqrt(Elem a) const;  // inverse Frobenius; every element is a square

  Elem generator() const;  // the class of x; requires k >= 2

  bool operator==(const GF2k& o) const { return k_ == o.k_ && modulus_ == o.modulus_; }
  bool operator!=(const GF2k& o) const { return !(*this == o); }

  std::string elem_to_string(Elem a) const;
  Elem parse_elem(const std::string& text) const;

  std::string spec_string() const;  // "gf2" or "gf(2^k; modulus=...)"

 private:
  int k_;
  uint32_t modulus_;
};

// Irreducibility over F_2 of the polynomial with the given coefficient mask:
// no common factor with x^(2^d) - x for any d up to half the degree.
bool gf2_poly_irreducible(uint64_t mask);

// Parses "gf2", "gf(2)", "gf(2^4)" or "gf(2^4; modulus=x^4+x+1)"; the modulus
// polynomial is written in x or g.
GF2k parse_field_spec(const std::string& text);

}  // namespace k3div

#endif
