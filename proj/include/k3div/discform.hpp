#ifndef K3DIV_DISCFORM_HPP_
#define K3DIV_DISCFORM_HPP_

#include <optional>
#include <vector>

#include "k3div/lattice.hpp"
#include "k3div/matrix.hpp"
#include "k3div/numeric.hpp"

namespace k3div {

// Discriminant group A_L = L*/L with its Q/2Z-valued quadratic form.
// Generators are dual vectors in basis coordinates of the source lattice,
// one per invariant factor > 1, of the stated orders.
struct DiscriminantForm {
  std::vector<Int> invariant_factors;  // d_1 | d_2 | ..., all > 1
  QMat generators;                     // rows
  std::vector<Rat> q_values;           // q(g_i) in [0, 2)
  QMat b_matrix;                       // b(g_i, g_j) in [0, 1)
  int length = 0;                      // minimal number of generators of A_L
  Int group_order = 1;
  bool two_elementary = true;
  std::optional<bool> type_I;          // q valued in Z/2Z
  std::optional<int> gauss_signature_mod8;

  bool is_trivial() const { return invariant_factors.empty(); }
};

// Limits for exhaustive work on A_L. Enumeration is blockwise over orthogonal
// generator components, so only a single component's order is ever iterated.
inline constexpr unsigned kGaussSumMaxBits = 24;
inline constexpr unsigned kEnumerationMaxBits = 20;

// Full invariant computation via the Smith normal form of the Gram matrix.
// The Gauss signature is omitted (not an error) when a component of the group
// is too large to iterate; type_I is omitted only when the group is neither
// 2-elementary nor small enough to enumerate.
DiscriminantForm discriminant_form(const IntegerLattice& lat);

// q takes values in Z/2Z. For 2-elementary groups this reduces to the
// generator values; otherwise falls back to exhaustive evaluation.
bool is_type_I(const DiscriminantForm& d);

// The invariant triple that classifies 2-elementary forms.
struct TwoElementaryInvariants {
  int length;
  bool type_I;
  int gauss_signature_mod8;
  bool operator==(const TwoElementaryInvariants&) const = default;
};
TwoElementaryInvariants two_elementary_invariants(const DiscriminantForm& d);

}  // namespace k3div

#endif
