#pragma once

// Dense matrices over an arbitrary scalar (exact QC or std::complex<double>).
// Deliberately minimal: representation data is small (dimension vectors are
// bounded by the affine marks), so clarity beats performance here.

#include "adeq/numeric.hpp"
#include "adeq/poly.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace adeq {

template <class T>
T scalar_from_qc(const QC& v);
template <>
inline QC scalar_from_qc<QC>(const QC& v) {
  return v;
}
template <>
inline CD scalar_from_qc<CD>(const QC& v) {
  return v.to_cd();
}

template <class T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size()) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
  }
  Mat(int rows, int cols, std::vector<T> data) : rows_(rows), cols_(cols), a_(std::move(data)) {
    if (a_.size() != size()) throw std::invalid_argument("matrix data size mismatch");
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const {
    return static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_);
  }

  T& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const T& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const std::vector<T>& data() const { return a_; }
  std::vector<T>& data() { return a_; }

  bool is_zero() const {
    for (const auto& v : a_)
      if (v != T(0)) return false;
    return true;
  }

  Mat& operator+=(const Mat& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator-(const Mat& m) {
    Mat r(m.rows_, m.cols_);
    for (std::size_t k = 0; k < m.a_.size(); ++k) r.a_[k] = -m.a_[k];
    return r;
  }
  friend Mat operator*(const T& s, const Mat& m) {
    Mat r(m.rows_, m.cols_);
    for (std::size_t k = 0; k < m.a_.size(); ++k) r.a_[k] = s * m.a_[k];
    return r;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Mat r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const T& aik = a.at(i, k);
        if (aik == T(0)) continue;
        for (int j = 0; j < b.cols_; ++j) r.at(i, j) += aik * b.at(k, j);
      }
    return r;
  }
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  T trace() const {
    if (rows_ != cols_) throw std::invalid_argument("trace of non-square matrix");
    T t(0);
    for (int i = 0; i < rows_; ++i) t += at(i, i);
    return t;
  }

 private:
  void check_same_shape(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("matrix shape mismatch");
  }

  int rows_, cols_;
  std::vector<T> a_;
};

using MatQ = Mat<QC>;
using MatC = Mat<CD>;

// Evaluate a polynomial at a square matrix argument (Horner).
template <class T>
Mat<T> poly_at_matrix(const Poly& p, const Mat<T>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("polynomial of non-square matrix");
  Mat<T> acc(m.rows(), m.cols());
  for (int k = p.degree(); k >= 0; --k) {
    acc = acc * m;
    T c = scalar_from_qc<T>(p.coeff(k));
    for (int i = 0; i < m.rows(); ++i) acc.at(i, i) += c;
  }
  return acc;
}

inline double fro_norm(const MatC& m) {
  double s = 0.0;
  for (const auto& v : m.data()) s += std::norm(v);
  return std::sqrt(s);
}

inline double fro_norm(const MatQ& m) {
  Rat s(0);
  for (const auto& v : m.data()) s += v.norm2();
  return std::sqrt(to_double(s));
}

inline double max_entry_norm(const MatC& m) {
  double s = 0.0;
  for (const auto& v : m.data()) s = std::max(s, std::abs(v));
  return s;
}

inline MatC to_float(const MatQ& m) {
  MatC r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j).to_cd();
  return r;
}

}  // namespace adeq
