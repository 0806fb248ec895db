#pragma once

// Sparse multivariate polynomials over the Gaussian rationals with a fixed
// number of variables.  The threefold equation lives in four variables
// (x, y, z, lambda); resolution-chart formulas live in three.  Ordered map
// storage keeps monomial enumeration deterministic, which the serialized
// equation format relies on.

#include "adeq/numeric.hpp"
#include "adeq/poly.hpp"

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace adeq {

template <std::size_t N>
class MPoly {
 public:
  using Exponents = std::array<int, N>;

  MPoly() = default;

  static MPoly zero() { return MPoly(); }
  static MPoly constant(QC v) {
    MPoly p;
    if (!v.is_zero()) p.terms_[Exponents{}] = std::move(v);
    return p;
  }
  static MPoly var(std::size_t i) {
    if (i >= N) throw std::invalid_argument("variable index out of range");
    Exponents e{};
    e[i] = 1;
    MPoly p;
    p.terms_[e] = QC(1);
    return p;
  }
  static MPoly monomial(const Exponents& e, QC c) {
    MPoly p;
    if (!c.is_zero()) p.terms_[e] = std::move(c);
    return p;
  }
  // Embed a univariate polynomial via its variable's index.
  static MPoly from_univariate(const Poly& q, std::size_t i) {
    if (i >= N) throw std::invalid_argument("variable index out of range");
    MPoly p;
    for (int k = 0; k <= q.degree(); ++k) {
      QC c = q.coeff(k);
      if (c.is_zero()) continue;
      Exponents e{};
      e[i] = k;
      p.terms_[e] = std::move(c);
    }
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Exponents, QC>& terms() const { return terms_; }

  QC coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? QC(0) : it->second;
  }

  MPoly& operator+=(const MPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator-(const MPoly& a) {
    MPoly r;
    for (const auto& [e, c] : a.terms_) r.terms_[e] = -c;
    return r;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e;
        for (std::size_t k = 0; k < N; ++k) e[k] = ea[k] + eb[k];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend MPoly operator*(const QC& s, const MPoly& p) {
    MPoly r;
    if (s.is_zero()) return r;
    for (const auto& [e, c] : p.terms_) r.terms_[e] = s * c;
    return r;
  }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  MPoly pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative power");
    MPoly r = constant(QC(1));
    MPoly base = *this;
    while (k > 0) {
      if (k & 1) r = r * base;
      base = base * base;
      k >>= 1;
    }
    return r;
  }

  MPoly partial(std::size_t i) const {
    if (i >= N) throw std::invalid_argument("variable index out of range");
    MPoly r;
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponents d = e;
      d[i] -= 1;
      r.add_term(d, QC(static_cast<long>(e[i])) * c);
    }
    return r;
  }

  int degree_in(std::size_t i) const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      (void)c;
      d = std::max(d, e[i]);
    }
    return d;
  }

  // Evaluate at scalar arguments (exact or floating).
  template <class T>
  T eval(const std::array<T, N>& args) const {
    // Cache powers per variable; exponents stay small.
    std::array<std::vector<T>, N> pows;
    for (std::size_t i = 0; i < N; ++i) pows[i].push_back(T(1));
    T acc(0);
    for (const auto& [e, c] : terms_) {
      T term = scalar_cast<T>(c);
      for (std::size_t i = 0; i < N; ++i) {
        auto& pv = pows[i];
        while (static_cast<int>(pv.size()) <= e[i]) pv.push_back(pv.back() * args[i]);
        term *= pv[static_cast<std::size_t>(e[i])];
      }
      acc += term;
    }
    return acc;
  }

  // Substitute polynomials for the variables.
  template <std::size_t M>
  MPoly<M> eval_poly(const std::array<MPoly<M>, N>& args) const {
    std::array<std::vector<MPoly<M>>, N> pows;
    for (std::size_t i = 0; i < N; ++i) pows[i].push_back(MPoly<M>::constant(QC(1)));
    MPoly<M> acc;
    for (const auto& [e, c] : terms_) {
      MPoly<M> term = MPoly<M>::constant(c);
      for (std::size_t i = 0; i < N; ++i) {
        auto& pv = pows[i];
        while (static_cast<int>(pv.size()) <= e[i]) pv.push_back(pv.back() * args[i]);
        term = term * pv[static_cast<std::size_t>(e[i])];
      }
      acc += term;
    }
    return acc;
  }

  std::string str(const std::array<std::string, N>& names) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + to_string(c) + ")";
      for (std::size_t i = 0; i < N; ++i) {
        if (e[i] == 0) continue;
        s += "*" + names[i];
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
      }
    }
    return s;
  }

 private:
  template <class T>
  static T scalar_cast(const QC& v) {
    if constexpr (std::is_same_v<T, QC>)
      return v;
    else
      return T(v.to_cd());
  }

  void add_term(const Exponents& e, const QC& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  std::map<Exponents, QC> terms_;
};

using MPoly3 = MPoly<3>;
using MPoly4 = MPoly<4>;

}  // namespace adeq
