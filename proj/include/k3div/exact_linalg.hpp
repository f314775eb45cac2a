#ifndef K3DIV_EXACT_LINALG_HPP_
#define K3DIV_EXACT_LINALG_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "k3div/matrix.hpp"
#include "k3div/numeric.hpp"

namespace k3div {

// left * A * right = d with d diagonal, d(i,i) | d(i+1,i+1), all d(i,i) >= 0,
// left and right unimodular. Transforms are kept so dual generators and
// Diophantine solutions can be read off.
struct SmithForm {
  IMat d;
  IMat left;
  IMat right;
  std::vector<Int> diagonal() const;
  size_t rank() const;
};

SmithForm smith_normal_form(const IMat& a);

// Row-echelon basis (over Z) of the row span of a. Result has one row per
// independent row, pivots positive, rows below cleared.
IMat hnf_row_basis(const IMat& a);

// Basis of {x in Z^n : a x = 0}, returned as rows.
IMat integer_kernel(const IMat& a);

// One solution of a x = b over Z, if any.
std::optional<IVec> solve_diophantine(const IMat& a, const IVec& b);

// Unique rational solution of a x = b for invertible square a.
QVec solve_rational(const QMat& a, const QVec& b);

std::optional<QVec> solve_rational_general(const QMat& a, const QVec& b);

QMat inverse(const QMat& a);

Int determinant(const IMat& a);
Rat determinant_q(const QMat& a);

// Sylvester signature (p, q) of a nondegenerate symmetric integer matrix.
std::pair<int, int> signature(const IMat& gram);

}  // namespace k3div

#endif
