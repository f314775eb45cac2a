#ifndef K3DIV_MATRIX_HPP_
#define K3DIV_MATRIX_HPP_

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "k3div/numeric.hpp"

namespace k3div {

// Dense row-major matrix over an exact scalar type (Int or Rat).
template <typename T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Mat(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("Mat: ragged initializer");
      for (const auto& x : row) data_.push_back(x);
    }
  }

  static Mat identity(size_t n) {
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  T& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Mat: size mismatch in product");
    Mat p(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == 0) continue;
        for (size_t j = 0; j < o.cols_; ++j) p(i, j) += a * o(k, j);
      }
    return p;
  }

  std::vector<T> row(size_t i) const {
    std::vector<T> r(cols_);
    for (size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }

  std::vector<T> col(size_t j) const {
    std::vector<T> c(rows_);
    for (size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  void swap_rows(size_t a, size_t b) {
    if (a == b) return;
    for (size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  void swap_cols(size_t a, size_t b) {
    if (a == b) return;
    for (size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  // row[a] += c * row[b]
  void add_row(size_t a, size_t b, const T& c) {
    for (size_t j = 0; j < cols_; ++j) (*this)(a, j) += c * (*this)(b, j);
  }

  void add_col(size_t a, size_t b, const T& c) {
    for (size_t i = 0; i < rows_; ++i) (*this)(i, a) += c * (*this)(i, b);
  }

  void scale_row(size_t a, const T& c) {
    for (size_t j = 0; j < cols_; ++j) (*this)(a, j) *= c;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

 private:
  size_t rows_, cols_;
  std::vector<T> data_;
};

using IMat = Mat<Int>;
using QMat = Mat<Rat>;

template <typename T>
std::vector<T> mat_vec(const Mat<T>& m, const std::vector<T>& v) {
  if (m.cols() != v.size()) throw std::invalid_argument("mat_vec: size mismatch");
  std::vector<T> out(m.rows());
  for (size_t i = 0; i < m.rows(); ++i) {
    T s(0);
    for (size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

template <typename T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  T s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// x^T G y for a symmetric pairing matrix G.
template <typename T>
T pair_with(const Mat<T>& gram, const std::vector<T>& x, const std::vector<T>& y) {
  return dot(x, mat_vec(gram, y));
}

inline QMat to_qmat(const IMat& m) {
  QMat q(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) q(i, j) = Rat(m(i, j));
  return q;
}

inline Rat pair_q(const IMat& gram, const QVec& x, const QVec& y) {
  QMat g = to_qmat(gram);
  return pair_with<Rat>(g, x, y);
}

}  // namespace k3div

#endif
