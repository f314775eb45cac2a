#include "k3div/exact_linalg.hpp"

#include <cstdlib>
#include <stdexcept>

namespace k3div {

std::vector<Int> SmithForm::diagonal() const {
  size_t n = std::min(d.rows(), d.cols());
  std::vector<Int> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) out.push_back(d(i, i));
  return out;
}

size_t SmithForm::rank() const {
  size_t r = 0;
  for (const Int& x : diagonal())
    if (x != 0) ++r;
  return r;
}

namespace {

// Pivot selection by minimal absolute value keeps intermediate entries small.
bool find_pivot(const IMat& m, size_t from, size_t& pi, size_t& pj) {
  bool found = false;
  Int best;
  for (size_t i = from; i < m.rows(); ++i)
    for (size_t j = from; j < m.cols(); ++j) {
      if (m(i, j) == 0) continue;
      Int a = abs(m(i, j));
      if (!found || a < best) {
        found = true;
        best = a;
        pi = i;
        pj = j;
      }
    }
  return found;
}

}  // namespace

SmithForm smith_normal_form(const IMat& a) {
  SmithForm f;
  f.d = a;
  f.left = IMat::identity(a.rows());
  f.right = IMat::identity(a.cols());
  IMat& d = f.d;

  size_t n = std::min(a.rows(), a.cols());
  for (size_t k = 0; k < n; ++k) {
    size_t pi = k, pj = k;
    if (!find_pivot(d, k, pi, pj)) break;
    d.swap_rows(k, pi);
    f.left.swap_rows(k, pi);
    d.swap_cols(k, pj);
    f.right.swap_cols(k, pj);

    for (;;) {
      bool clean = true;
      for (size_t i = k + 1; i < d.rows(); ++i) {
        if (d(i, k) == 0) continue;
        Int q = floor_div(d(i, k), d(k, k));
        d.add_row(i, k, -q);
        f.left.add_row(i, k, -q);
        if (d(i, k) != 0) {
          d.swap_rows(k, i);
          f.left.swap_rows(k, i);
          clean = false;
        }
      }
      for (size_t j = k + 1; j < d.cols(); ++j) {
        if (d(k, j) == 0) continue;
        Int q = floor_div(d(k, j), d(k, k));
        d.add_col(j, k, -q);
        f.right.add_col(j, k, -q);
        if (d(k, j) != 0) {
          d.swap_cols(k, j);
          f.right.swap_cols(k, j);
          clean = false;
        }
      }
      if (clean) break;
    }

    // Divisibility pass: fold any entry the pivot misses back into column k.
    for (;;) {
      bool fixed = true;
      for (size_t i = k + 1; i < d.rows() && fixed; ++i)
        for (size_t j = k + 1; j < d.cols() && fixed; ++j) {
          if (mod_floor(d(i, j), d(k, k)) != 0) {
            d.add_col(k, j, Int(1));
            f.right.add_col(k, j, Int(1));
            fixed = false;
          }
        }
      if (fixed) break;
      for (;;) {
        bool clean = true;
        for (size_t i = k + 1; i < d.rows(); ++i) {
          if (d(i, k) == 0) continue;
          Int q = floor_div(d(i, k), d(k, k));
          d.add_row(i, k, -q);
          f.left.add_row(i, k, -q);
          if (d(i, k) != 0) {
            d.swap_rows(k, i);
            f.left.swap_rows(k, i);
            clean = false;
          }
        }
        for (size_t j = k + 1; j < d.cols(); ++j) {
          if (d(k, j) == 0) continue;
          Int q = floor_div(d(k, j), d(k, k));
          d.add_col(j, k, -q);
          f.right.add_col(j, k, -q);
          if (d(k, j) != 0) {
            d.swap_cols(k, j);
            f.right.swap_cols(k, j);
            clean = false;
          }
        }
        if (clean) break;
      }
    }

    if (d(k, k) < 0) {
      d.scale_row(k, Int(-1));
      f.left.scale_row(k, Int(-1));
    }
  }
  return f;
}

IMat hnf_row_basis(const IMat& a) {
  IMat m = a;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    // Euclidean elimination within the column.
    for (;;) {
      size_t pivot = m.rows();
      Int best;
      for (size_t i = row; i < m.rows(); ++i) {
        if (m(i, col) == 0) continue;
        Int v = abs(m(i, col));
        if (pivot == m.rows() || v < best) {
          pivot = i;
          best = v;
        }
      }
      if (pivot == m.rows()) break;  // column exhausted
      m.swap_rows(row, pivot);
      bool cleared = true;
      for (size_t i = row + 1; i < m.rows(); ++i) {
        if (m(i, col) == 0) continue;
        Int q = floor_div(m(i, col), m(row, col));
        m.add_row(i, row, -q);
        if (m(i, col) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (row < m.rows() && m(row, col) != 0) {
      if (m(row, col) < 0) m.scale_row(row, Int(-1));
      // Reduce the rows above so the result is unique for a fixed row span.
      for (size_t i = 0; i < row; ++i) {
        Int q = floor_div(m(i, col), m(row, col));
        if (q != 0) m.add_row(i, row, -q);
      }
      ++row;
    }
  }
  IMat out(row, m.cols());
  for (size_t i = 0; i < row; ++i)
    for (size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

IMat integer_kernel(const IMat& a) {
  SmithForm f = smith_normal_form(a);
  size_t r = f.rank();
  size_t n = a.cols();
  // a * right e_i = left^-1 d e_i = 0 for i >= r.
  IMat ker(n - r, n);
  for (size_t i = r; i < n; ++i)
    for (size_t j = 0; j < n; ++j) ker(i - r, j) = f.right(j, i);
  return ker;
}

std::optional<IVec> solve_diophantine(const IMat& a, const IVec& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve_diophantine: size mismatch");
  SmithForm f = smith_normal_form(a);
  IVec c = mat_vec(f.left, b);
  size_t n = a.cols();
  IVec y(n, Int(0));
  size_t rank = f.rank();
  for (size_t i = 0; i < a.rows(); ++i) {
    Int di = (i < std::min(a.rows(), a.cols())) ? f.d(i, i) : Int(0);
    if (i < rank) {
      if (mod_floor(c[i], di) != 0) return std::nullopt;
      y[i] = c[i] / di;
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return mat_vec(f.right, y);
}

QVec solve_rational(const QMat& a, const QVec& b) {
  auto r = solve_rational_general(a, b);
  if (!r) throw std::invalid_argument("solve_rational: singular system");
  return *r;
}

std::optional<QVec> solve_rational_general(const QMat& a, const QVec& b) {
  size_t rows = a.rows(), cols = a.cols();
  if (rows != b.size()) throw std::invalid_argument("solve_rational: size mismatch");
  QMat m(rows, cols + 1);
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) m(i, j) = a(i, j);
    m(i, cols) = b[i];
  }
  size_t row = 0;
  std::vector<size_t> pivot_col;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t p = rows;
    for (size_t i = row; i < rows; ++i)
      if (m(i, col) != 0) {
        p = i;
        break;
      }
    if (p == rows) continue;
    m.swap_rows(row, p);
    Rat inv = Rat(1) / m(row, col);
    m.scale_row(row, inv);
    for (size_t i = 0; i < rows; ++i) {
      if (i == row || m(i, col) == 0) continue;
      m.add_row(i, row, -m(i, col));
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (size_t i = row; i < rows; ++i)
    if (m(i, cols) != 0) return std::nullopt;
  QVec x(cols, Rat(0));
  for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = m(i, cols);
  return x;
}

QMat inverse(const QMat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: not square");
  size_t n = a.rows();
  QMat m(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n + i) = Rat(1);
  }
  for (size_t col = 0; col < n; ++col) {
    size_t p = n;
    for (size_t i = col; i < n; ++i)
      if (m(i, col) != 0) {
        p = i;
        break;
      }
    if (p == n) throw std::invalid_argument("inverse: singular matrix");
    m.swap_rows(col, p);
    m.scale_row(col, Rat(1) / m(col, col));
    for (size_t i = 0; i < n; ++i) {
      if (i == col || m(i, col) == 0) continue;
      m.add_row(i, col, -m(i, col));
    }
  }
  QMat inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv(i, j) = m(i, n + j);
  return inv;
}

Rat determinant_q(const QMat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: not square");
  QMat m = a;
  size_t n = m.rows();
  Rat det(1);
  for (size_t col = 0; col < n; ++col) {
    size_t p = n;
    for (size_t i = col; i < n; ++i)
      if (m(i, col) != 0) {
        p = i;
        break;
      }
    if (p == n) return Rat(0);
    if (p != col) {
      m.swap_rows(col, p);
      det = -det;
    }
    det *= m(col, col);
    Rat inv = Rat(1) / m(col, col);
    for (size_t i = col + 1; i < n; ++i) {
      if (m(i, col) == 0) continue;
      Rat c = m(i, col) * inv;
      m.add_row(i, col, -c);
    }
  }
  return det;
}

Int determinant(const IMat& a) {
  Rat d = determinant_q(to_qmat(a));
  if (!is_integer(d)) throw std::logic_error("determinant: non-integer result");
  return d.get_num();
}

std::pair<int, int> signature(const IMat& gram) {
  if (!gram.is_symmetric()) throw std::invalid_argument("signature: matrix not symmetric");
  QMat m = to_qmat(gram);
  size_t n = m.rows();
  int pos = 0, neg = 0;
  // Congruence diagonalization; inertia is preserved.
  for (size_t k = 0; k < n; ++k) {
    if (m(k, k) == 0) {
      size_t j = n;
      for (size_t c = k + 1; c < n; ++c)
        if (m(k, c) != 0) {
          j = c;
          break;
        }
      if (j == n) throw std::invalid_argument("signature: degenerate form");
      // Make the (k,k) entry nonzero by a symmetric row/column addition.
      m.add_row(k, j, Rat(1));
      m.add_col(k, j, Rat(1));
      if (m(k, k) == 0) {
        m.add_row(k, j, Rat(-2));
        m.add_col(k, j, Rat(-2));
      }
    }
    Rat piv = m(k, k);
    if (piv > 0)
      ++pos;
    else
      ++neg;
    for (size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Rat c = m(i, k) / piv;
      m.add_row(i, k, -c);
      m.add_col(i, k, -c);
    }
  }
  return {pos, neg};
}

}  // namespace k3div
