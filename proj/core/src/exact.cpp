#include "adeq/linalg.hpp"
#include "adeq/poly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <stdexcept>

namespace adeq {

// ---------------------------------------------------------------------------
// Polynomial roots
// ---------------------------------------------------------------------------

std::optional<Rat> rational_sqrt(const Rat& r) {
  if (r < 0) return std::nullopt;
  if (r.is_zero()) return Rat(0);
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  BigInt sn = boost::multiprecision::sqrt(num);
  BigInt sd = boost::multiprecision::sqrt(den);
  if (sn * sn != num || sd * sd != den) return std::nullopt;
  return Rat(sn, sd);
}

std::optional<QC> qc_sqrt(const QC& v) {
  // Solve (a+bi)^2 = re + im*i exactly.  With n = |v|, a^2 = (re+n)/2 and
  // b^2 = (n-re)/2, which requires |v| to be rational.
  auto n = rational_sqrt(v.norm2());
  if (!n) return std::nullopt;
  auto a2 = (v.re + *n) / 2;
  auto b2 = (*n - v.re) / 2;
  auto a = rational_sqrt(a2);
  auto b = rational_sqrt(b2);
  if (!a || !b) return std::nullopt;
  // Fix the relative sign so that 2ab = im.
  QC root(*a, v.im >= 0 ? *b : -*b);
  if (root * root == v) return root;
  return std::nullopt;
}

std::vector<CD> roots_approx(const Poly& p) {
  if (p.is_zero()) throw std::domain_error("roots of the zero polynomial");
  int d = p.degree();
  if (d == 0) return {};
  if (d == 1) return {linear_root(p).to_cd()};
  // Companion matrix of the monic normalization.
  Poly m = p.monic();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) c(i, d - 1) = -m.coeff(i).to_cd();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c, /*computeEigenvectors=*/false);
  std::vector<CD> roots(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) roots[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  // Deterministic order for reporting.
  std::sort(roots.begin(), roots.end(), [](const CD& a, const CD& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

std::vector<PolyRoot> roots_with_exactness(const Poly& p) {
  if (p.is_zero()) throw std::domain_error("roots of the zero polynomial");
  int d = p.degree();
  std::vector<PolyRoot> out;
  if (d == 0) return out;
  if (d == 1) {
    QC r = linear_root(p);
    out.push_back({r.to_cd(), r});
    return out;
  }
  if (d == 2) {
    // x = (-b +- sqrt(b^2-4ac)) / (2a), exact when the discriminant has a
    // square root in Q(i).
    QC a = p.coeff(2), b = p.coeff(1), c = p.coeff(0);
    QC disc = b * b - QC(4) * a * c;
    if (auto s = qc_sqrt(disc)) {
      QC twoa = QC(2) * a;
      QC r1 = (-b + *s) / twoa;
      QC r2 = (-b - *s) / twoa;
      out.push_back({r1.to_cd(), r1});
      out.push_back({r2.to_cd(), r2});
      std::sort(out.begin(), out.end(), [](const PolyRoot& u, const PolyRoot& v) {
        if (u.approx.real() != v.approx.real()) return u.approx.real() < v.approx.real();
        return u.approx.imag() < v.approx.imag();
      });
      return out;
    }
  }
  for (const CD& r : roots_approx(p)) out.push_back({r, std::nullopt});
  return out;
}

// ---------------------------------------------------------------------------
// SpanTracker
// ---------------------------------------------------------------------------

std::size_t SpanTracker::reduce(std::vector<QC>& v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const QC& c = v[pivot_cols_[r]];
    if (c.is_zero()) continue;
    QC f = c;  // pivot of rows_[r] is 1
    for (std::size_t j = 0; j < n_; ++j) v[j] -= f * rows_[r][j];
  }
  for (std::size_t j = 0; j < n_; ++j)
    if (!v[j].is_zero()) return j;
  return n_;
}

bool SpanTracker::insert(std::vector<QC> v) {
  if (v.size() != n_) throw std::invalid_argument("span insert: wrong length");
  std::size_t p = reduce(v);
  if (p == n_) return false;
  QC inv = QC(1) / v[p];
  for (std::size_t j = 0; j < n_; ++j) v[j] *= inv;
  // Back-substitute into existing rows to keep reduction single-pass.
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    QC c = rows_[r][p];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < n_; ++j) rows_[r][j] -= c * v[j];
  }
  rows_.push_back(std::move(v));
  pivot_cols_.push_back(p);
  return true;
}

bool SpanTracker::contains(std::vector<QC> v) const {
  if (v.size() != n_) throw std::invalid_argument("span query: wrong length");
  return reduce(v) == n_;
}

// ---------------------------------------------------------------------------
// Fraction-free rank, kernels
// ---------------------------------------------------------------------------

namespace {

struct GInt {  // Gaussian integer
  BigInt re, im;
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

GInt gmul(const GInt& a, const GInt& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
GInt gsub(const GInt& a, const GInt& b) { return {a.re - b.re, a.im - b.im}; }

// Exact division; the Bareiss identity guarantees divisibility.
GInt gdiv_exact(const GInt& a, const GInt& b) {
  BigInt n2 = b.re * b.re + b.im * b.im;
  BigInt re = a.re * b.re + a.im * b.im;
  BigInt im = a.im * b.re - a.re * b.im;
  GInt q{re / n2, im / n2};
  if (q.re * n2 != re || q.im * n2 != im)
    throw std::logic_error("fraction-free elimination: inexact division");
  return q;
}

}  // namespace

int exact_rank(const MatQ& m) {
  const int rows = m.rows(), cols = m.cols();
  if (rows == 0 || cols == 0) return 0;
  // Clear denominators row by row (does not change the row space).
  std::vector<std::vector<GInt>> a(static_cast<std::size_t>(rows),
                                   std::vector<GInt>(static_cast<std::size_t>(cols)));
  for (int i = 0; i < rows; ++i) {
    BigInt l = 1;
    for (int j = 0; j < cols; ++j) {
      const QC& v = m.at(i, j);
      l = boost::multiprecision::lcm(
          l, boost::multiprecision::lcm(boost::multiprecision::denominator(v.re),
                                        boost::multiprecision::denominator(v.im)));
    }
    for (int j = 0; j < cols; ++j) {
      const QC& v = m.at(i, j);
      Rat re = v.re * l, im = v.im * l;
      a[i][j] = {boost::multiprecision::numerator(re), boost::multiprecision::numerator(im)};
    }
  }

  int rank = 0;
  GInt prev{1, 0};
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (!a[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[rank], a[piv]);
    for (int r = rank + 1; r < rows; ++r) {
      for (int j = col + 1; j < cols; ++j)
        a[r][j] = gdiv_exact(
            gsub(gmul(a[rank][col], a[r][j]), gmul(a[r][col], a[rank][j])), prev);
      a[r][col] = GInt{0, 0};
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

namespace {

// Gauss-Jordan to reduced row echelon form; returns pivot column per row.
std::vector<int> rref_in_place(std::vector<std::vector<QC>>& a, int cols) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < cols && row < static_cast<int>(a.size()); ++col) {
    int piv = -1;
    for (int r = row; r < static_cast<int>(a.size()); ++r)
      if (!a[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[row], a[piv]);
    QC inv = QC(1) / a[row][col];
    for (int j = col; j < static_cast<int>(a[row].size()); ++j) a[row][j] *= inv;
    for (int r = 0; r < static_cast<int>(a.size()); ++r) {
      if (r == row) continue;
      QC f = a[r][col];
      if (f.is_zero()) continue;
      for (int j = col; j < static_cast<int>(a[r].size()); ++j) a[r][j] -= f * a[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::vector<std::vector<QC>> kernel_basis(const MatQ& m) {
  const int rows = m.rows(), cols = m.cols();
  std::vector<std::vector<QC>> a(static_cast<std::size_t>(rows),
                                 std::vector<QC>(static_cast<std::size_t>(cols)));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a[i][j] = m.at(i, j);
  std::vector<int> pivots = rref_in_place(a, cols);

  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;

  std::vector<std::vector<QC>> basis;
  for (int freec = 0; freec < cols; ++freec) {
    if (is_pivot[static_cast<std::size_t>(freec)]) continue;
    std::vector<QC> v(static_cast<std::size_t>(cols));
    v[static_cast<std::size_t>(freec)] = QC(1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[static_cast<std::size_t>(pivots[r])] = -a[r][static_cast<std::size_t>(freec)];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<QC> solve_linear(const MatQ& m, const std::vector<QC>& rhs) {
  const int rows = m.rows(), cols = m.cols();
  if (static_cast<int>(rhs.size()) != rows)
    throw std::invalid_argument("solve_linear: rhs length mismatch");
  std::vector<std::vector<QC>> a(static_cast<std::size_t>(rows),
                                 std::vector<QC>(static_cast<std::size_t>(cols) + 1));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) a[i][j] = m.at(i, j);
    a[i][static_cast<std::size_t>(cols)] = rhs[static_cast<std::size_t>(i)];
  }
  // Reduce only the coefficient block; the augmented column rides along.
  std::vector<int> pivots = rref_in_place(a, cols);
  for (std::size_t r = pivots.size(); r < a.size(); ++r)
    if (!a[r][static_cast<std::size_t>(cols)].is_zero()) return {};  // inconsistent
  std::vector<QC> x(static_cast<std::size_t>(cols));
  for (std::size_t r = 0; r < pivots.size(); ++r)
    x[static_cast<std::size_t>(pivots[r])] = a[r][static_cast<std::size_t>(cols)];
  return x;
}

}  // namespace adeq
