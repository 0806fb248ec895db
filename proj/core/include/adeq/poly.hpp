#pragma once

// Univariate polynomials over the Gaussian rationals, dense representation,
// coefficients in ascending degree order.  Supports the exact operations the
// deformation data needs: arithmetic, formal derivative, evaluation (exact and
// floating), Euclidean division and gcd.  gcd is used to decide whether a
// polynomial is squarefree, so it must be exact.

#include "adeq/numeric.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace adeq {

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<QC> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<QC> coeffs) : c_(coeffs) { trim(); }

  static Poly zero() { return Poly(); }
  static Poly constant(QC v) { return Poly({std::move(v)}); }
  // c1*x + c0
  static Poly linear(QC c1, QC c0) { return Poly({std::move(c0), std::move(c1)}); }
  static Poly x() { return Poly({QC(0), QC(1)}); }
  static Poly monomial(int degree, QC coeff) {
    std::vector<QC> c(static_cast<std::size_t>(degree) + 1);
    c.back() = std::move(coeff);
    return Poly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is reported as -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  const std::vector<QC>& coeffs() const { return c_; }
  QC coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return QC(0);
    return c_[static_cast<std::size_t>(k)];
  }
  QC leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  QC eval(const QC& x) const {
    QC acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  CD eval(const CD& x) const {
    CD acc(0.0, 0.0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_cd();
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<QC> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * QC(static_cast<long>(k));
    return Poly(std::move(d));
  }

  // Antiderivative with zero constant term; right inverse of derivative().
  Poly antiderivative() const {
    if (c_.empty()) return Poly();
    std::vector<QC> a(c_.size() + 1);
    for (std::size_t k = 0; k < c_.size(); ++k)
      a[k + 1] = c_[k] / QC(static_cast<long>(k) + 1);
    return Poly(std::move(a));
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) {
    std::vector<QC> c(a.c_.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = -a.c_[k];
    return Poly(std::move(c));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<QC> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }
  friend Poly operator*(const QC& s, const Poly& p) {
    if (s.is_zero()) return Poly();
    std::vector<QC> c(p.c_.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = s * p.c_[k];
    return Poly(std::move(c));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Euclidean division: *this = q*d + r with deg r < deg d.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly r = *this;
    if (r.degree() < d.degree()) return {Poly(), r};
    std::vector<QC> q(static_cast<std::size_t>(r.degree() - d.degree()) + 1);
    QC lead_inv = QC(1) / d.leading();
    while (!r.is_zero() && r.degree() >= d.degree()) {
      int shift = r.degree() - d.degree();
      QC f = r.leading() * lead_inv;
      q[static_cast<std::size_t>(shift)] = f;
      r -= Poly::monomial(shift, f) * d;
    }
    return {Poly(std::move(q)), std::move(r)};
  }

  Poly monic() const {
    if (is_zero()) return Poly();
    QC inv = QC(1) / leading();
    return inv * *this;
  }

  std::string str(const std::string& var = "lambda") const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
      QC ck = coeff(k);
      if (ck.is_zero()) continue;
      if (!s.empty()) s += " + ";
      std::string term = "(" + to_string(ck) + ")";
      if (k == 1)
        term += "*" + var;
      else if (k > 1)
        term += "*" + var + "^" + std::to_string(k);
      s += term;
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<QC> c_;
};

// Monic gcd; gcd(0, 0) = 0.
inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline bool is_squarefree(const Poly& p) {
  if (p.is_zero()) return false;
  if (p.degree() == 0) return true;
  return poly_gcd(p, p.derivative()).degree() == 0;
}

// Exact root of a degree-1 polynomial.
inline QC linear_root(const Poly& p) {
  if (p.degree() != 1) throw std::domain_error("linear_root needs degree 1");
  return -p.coeff(0) / p.coeff(1);
}

// Exact square root of a rational if it is a perfect square, else nullopt.
std::optional<Rat> rational_sqrt(const Rat& r);

// Exact square root of a Gaussian rational if one exists in Q(i).
std::optional<QC> qc_sqrt(const QC& v);

// All complex roots, numerically (companion-matrix eigenvalues).  The zero
// polynomial is a domain error; constants have no roots.
std::vector<CD> roots_approx(const Poly& p);

// Roots of p as (value, exactness): exact over Q(i) for degree 1 always and
// for degree 2 when the discriminant has a Gaussian-rational square root;
// higher degrees (or irrational surds) fall back to numeric values.
struct PolyRoot {
  CD approx;
  std::optional<QC> exact;
};
std::vector<PolyRoot> roots_with_exactness(const Poly& p);

}  // namespace adeq
