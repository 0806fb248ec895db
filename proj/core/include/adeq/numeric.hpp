#pragma once

// Exact scalar arithmetic used throughout: arbitrary-precision rationals and
// Gaussian rationals (complex numbers with rational real/imaginary parts).
// Every structural decision downstream (rank, simplicity, genericity) is made
// with these types; doubles only ever appear in diagnostics and in the
// iterative solver.

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace adeq {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using CD = std::complex<double>;

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }

// a + b*i with exact rational a, b.
struct QC {
  Rat re{0};
  Rat im{0};

  QC() = default;
  QC(long v) : re(v) {}  // NOLINT: implicit on purpose, mirrors numeric literals
  QC(Rat r) : re(std::move(r)) {}
  QC(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  QC(long num, long den) : re(Rat(num, den)) {}

  static QC i() { return QC(Rat(0), Rat(1)); }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }

  QC conj() const { return QC(re, -im); }
  Rat norm2() const { return re * re + im * im; }  // |z|^2, exact
  CD to_cd() const { return CD(to_double(re), to_double(im)); }

  QC& operator+=(const QC& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  QC& operator-=(const QC& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  QC& operator*=(const QC& o) {
    Rat r = re * o.re - im * o.im;
    Rat i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  QC& operator/=(const QC& o) {
    Rat n2 = o.norm2();
    if (n2.is_zero()) throw std::domain_error("exact division by zero");
    Rat r = (re * o.re + im * o.im) / n2;
    Rat i = (im * o.re - re * o.im) / n2;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend QC operator+(QC a, const QC& b) { return a += b; }
  friend QC operator-(QC a, const QC& b) { return a -= b; }
  friend QC operator*(QC a, const QC& b) { return a *= b; }
  friend QC operator/(QC a, const QC& b) { return a /= b; }
  friend QC operator-(const QC& a) { return QC(-a.re, -a.im); }
  friend bool operator==(const QC& a, const QC& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const QC& a, const QC& b) { return !(a == b); }
  // Lexicographic; gives containers a deterministic order, no numeric meaning.
  friend bool operator<(const QC& a, const QC& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }
};

inline double abs_approx(const QC& v) { return std::abs(v.to_cd()); }
inline double abs_approx(const CD& v) { return std::abs(v); }

inline std::string to_string(const Rat& r) { return r.str(); }

inline std::string to_string(const QC& v) {
  if (v.im.is_zero()) return v.re.str();
  std::string s = v.re.is_zero() ? std::string() : v.re.str();
  if (!s.empty() && v.im > 0) s += "+";
  s += v.im.str() + "*i";
  return s;
}

// Deterministic pseudo-random source.  Wraps a fixed 64-bit generator with
// hand-rolled bounded draws so that a given seed yields the same stream on
// every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next_u64() {
    // splitmix64: tiny, portable, plenty for test-data generation.
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound), bound >= 1.
  std::uint64_t next_below(std::uint64_t bound) {
    // Modulo bias is irrelevant at our bounds (tiny vs 2^64).
    return next_u64() % bound;
  }

  long next_int(long lo, long hi) {  // inclusive range
    return lo + static_cast<long>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  double next_unit() {  // [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double next_real(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // Small random rational with numerator in [-max_num, max_num] and
  // denominator in [1, max_den].
  Rat next_rat(long max_num = 9, long max_den = 4) {
    return Rat(next_int(-max_num, max_num), next_int(1, max_den));
  }

  Rat next_rat_nonzero(long max_num = 9, long max_den = 4) {
    for (;;) {
      Rat r = next_rat(max_num, max_den);
      if (!r.is_zero()) return r;
    }
  }

  QC next_qc(long max_num = 9, long max_den = 4) {
    Rat re = next_rat(max_num, max_den);
    Rat im = next_rat(max_num, max_den);
    return QC(std::move(re), std::move(im));
  }

  QC next_qc_nonzero(long max_num = 9, long max_den = 4) {
    for (;;) {
      QC v = next_qc(max_num, max_den);
      if (!v.is_zero()) return v;
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace adeq
