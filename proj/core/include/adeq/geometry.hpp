#pragma once

// Explicit geometry of the cyclic (type A) case: the invariant coordinates
// (x, y, z, lambda) of a representation, the fibered hypersurface
// x y = prod_j (z + t_j(lambda)), its singular points, the theta
// semi-invariant generators, the resolution charts U_0..U_n with their
// transition maps, and a numeric probe of resolution fibers.

#include "adeq/dynkin.hpp"
#include "adeq/mpoly.hpp"
#include "adeq/rep.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace adeq {

// Variable slots of the ambient polynomial ring C[x, y, z, lambda].
enum EqVar : int { kVarX = 0, kVarY = 1, kVarZ = 2, kVarLambda = 3 };

struct ThreefoldEquation {
  int n = 0;            // hypersurface x y = prod of n+1 linear-in-z factors
  std::vector<Poly> t;  // eigenvalue polynomials t_0 .. t_n
  MPoly4 poly;          // x*y - prod_j (z + t_j(lambda)), expanded
};

// Expands the defining polynomial for a type-A fibration.
ThreefoldEquation threefold_equation(const FibrationData& f);

template <class T>
struct SurfacePoint {
  T x{}, y{}, z{}, lambda{};
};
using SurfacePointQ = SurfacePoint<QC>;
using SurfacePointC = SurfacePoint<CD>;

SurfacePointC to_float(const SurfacePointQ& p);

// Value of the defining polynomial at p; zero means p lies on the threefold.
template <class T>
T residual_value(const SurfacePoint<T>& p, const ThreefoldEquation& eq) {
  return eq.poly.template eval<T>({p.x, p.y, p.z, p.lambda});
}

template <class T>
double hypersurface_residual(const SurfacePoint<T>& p, const ThreefoldEquation& eq);

// Gradient (d/dx, d/dy, d/dz, d/dlambda) of the defining polynomial at p.
template <class T>
std::array<T, 4> equation_gradient(const SurfacePoint<T>& p, const ThreefoldEquation& eq);

// Invariant coordinates of a thin representation with scalar loops:
// x = prod of the cycle matrices, y = prod of the reverse cycle,
// z = average of the vertex products z_i = x_i y_i.  When the eigenvalues
// are trace-centered (sum_j t_j = 0) every z_i equals z + t_{i+1}(lambda).
template <class T>
SurfacePoint<T> invariants_type_a(const Representation<T>& v, const FibrationData& f);

// The cycle products z_i, indexed by the tail vertex of each forward arrow.
template <class T>
std::vector<T> vertex_cycle_products(const Representation<T>& v);

struct SingularPoint {
  CD lambda_star;                 // base point where two eigenvalue lines cross
  std::optional<QC> lambda_exact;
  CD z_star;                      // z = -t_i(lambda_star), shared by the pair
  std::optional<QC> z_exact;
  std::vector<std::pair<int, int>> pairs;  // eigenvalue indices colliding here
};

struct SingularLocus {
  bool generic = true;  // transversality verdict for the input fibration
  std::vector<SingularPoint> points;
};

// All points with x = y = 0 where two factors of the defining product vanish
// together; deduplicated, sorted by (lambda, z).  Throws when some t_i - t_j
// vanishes identically (the singular locus would be a whole line).
SingularLocus singular_points(const FibrationData& f);

struct SemiInvariantMonomial {
  std::string name;
  std::vector<int> x_exp, y_exp;  // exponents of x_0..x_n / y_0..y_n
  std::vector<int> weight;        // torus character, one entry per vertex
};

struct MonomialRelation {
  std::string text;
  std::vector<int> lhs_x, lhs_y;  // exponent vectors of both sides
  std::vector<int> rhs_x, rhs_y;
  bool holds = false;             // the two sides agree as monomials
};

struct SemiInvariants {
  int n = 0;
  std::vector<SemiInvariantMonomial> u, v;  // u_j = x_0..x_j, v_j = y_{j+1}..y_n
  std::vector<SemiInvariantMonomial> f;     // weight-one generators f_0..f_n
  std::vector<MonomialRelation> relations;
};

// Generators and relations of the semi-invariant module for the stability
// parameter (-n, 1, ..., 1), with every relation verified as a monomial
// identity.
SemiInvariants semi_invariants_type_a(int n);

// Chart coordinates: k = 0 carries (eta_0, y), 1 <= k <= n-1 carries
// (xi_k, eta_k), k = n carries (x, xi_n); the last slot is always lambda.
template <class T>
struct ChartPoint {
  int k = 0;
  T c1{}, c2{}, lambda{};
};
using ChartPointQ = ChartPoint<QC>;
using ChartPointC = ChartPoint<CD>;

ChartPointC to_float(const ChartPointQ& c);

// Image of a chart point on the hypersurface.
template <class T>
SurfacePoint<T> chart_point(const ChartPoint<T>& c, const FibrationData& f);

// Symbolic proof that every point of chart k satisfies the defining equation.
bool chart_identity_check(int k, const FibrationData& f);

// Adjacent-chart transition: direction +1 maps chart k into chart k+1 where
// the eta-side pivot is nonzero, -1 maps k into k-1 where the xi-side pivot
// is.  Throws off the overlap or past the ends.
template <class T>
ChartPoint<T> chart_transition(const ChartPoint<T>& c, const FibrationData& f, int direction);

// Symbolic proof that the transition out of chart k preserves the surface
// image wherever it is defined.
bool transition_identity_check(int k, int direction, const FibrationData& f);

struct ChartProbe {
  int k = 0;
  bool family = false;  // a 1-parameter solution family was hit
  int family_hits = 0;
  std::optional<ChartPointC> isolated;  // verified forced preimage, if any
};

struct FiberProbeReport {
  int dimension_estimate = -1;  // 1 = curve, 0 = isolated, -1 = no preimage
  int distinct_preimages = 0;   // forced preimages up to overlap identification
  std::vector<ChartProbe> charts;
};

// Searches every chart for preimages of p under the resolution: forced
// completions detect isolated preimages, randomized one-parameter sweeps
// detect positive-dimensional fibers.  Requires a generic fibration.
FiberProbeReport fiber_probe(const SurfacePointC& p, const FibrationData& f, int samples,
                             std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Implementation (templates)
// ---------------------------------------------------------------------------

namespace detail {

// Eigenvalue polynomials of a validated type-A fibration, plus the cyclic
// index map sigma(k) = k+1 mod (n+1) used by every chart formula.
std::vector<Poly> chart_eigenvalues(const FibrationData& f);

inline int cyc(int j, int m) { return ((j % m) + m) % m; }

}  // namespace detail

template <class T>
double hypersurface_residual(const SurfacePoint<T>& p, const ThreefoldEquation& eq) {
  T value = residual_value(p, eq);
  if constexpr (is_exact_field_v<T>)
    return std::sqrt(static_cast<double>(value.norm2()));
  else
    return std::abs(value);
}

template <class T>
std::array<T, 4> equation_gradient(const SurfacePoint<T>& p, const ThreefoldEquation& eq) {
  std::array<T, 4> g;
  for (std::size_t i = 0; i < 4; ++i)
    g[i] = eq.poly.partial(i).template eval<T>({p.x, p.y, p.z, p.lambda});
  return g;
}

template <class T>
std::vector<T> vertex_cycle_products(const Representation<T>& v) {
  validate_shapes(v);
  for (int d : v.dim)
    if (d != 1) throw std::domain_error("cycle products require a thin representation");
  std::vector<T> z(v.dim.size(), T(0));
  for (std::size_t k = 0; k < v.quiver.arrows.size(); ++k) {
    const Arrow& a = v.quiver.arrows[k];
    if (a.kind != ArrowKind::Plain) continue;
    if (a.star_of < 0) throw std::domain_error("plain arrow '" + a.id + "' has no reverse partner");
    z[static_cast<std::size_t>(a.tail)] =
        v.mats[k].at(0, 0) * v.mats[static_cast<std::size_t>(a.star_of)].at(0, 0);
  }
  return z;
}

template <class T>
SurfacePoint<T> invariants_type_a(const Representation<T>& v, const FibrationData& f) {
  validate_fibration(f);
  if (f.type.family != Family::A)
    throw std::domain_error("invariant coordinates are defined for type A only");
  validate_shapes(v);
  if (v.quiver.vertex_count != f.type.rank + 1)
    throw std::domain_error("representation and fibration have different vertex counts");
  for (int d : v.dim)
    if (d != 1) throw std::domain_error("invariant coordinates require a thin representation");

  double tol = default_tolerance(v);
  std::optional<T> lambda = scalar_loop_lambda(v, tol);
  if (!lambda) throw std::domain_error("loops are not scalar");
  if (!is_representation(v, tau_from_fibration(f), tol))
    throw std::domain_error("relations are not satisfied");

  SurfacePoint<T> p;
  p.lambda = *lambda;
  p.x = T(1);
  p.y = T(1);
  for (std::size_t k = 0; k < v.quiver.arrows.size(); ++k) {
    const Arrow& a = v.quiver.arrows[k];
    if (a.kind == ArrowKind::Plain)
      p.x = p.x * v.mats[k].at(0, 0);
    else if (a.kind == ArrowKind::Star)
      p.y = p.y * v.mats[k].at(0, 0);
  }
  std::vector<T> z = vertex_cycle_products(v);
  T sum(0);
  for (const T& zi : z) sum += zi;
  if constexpr (is_exact_field_v<T>)
    p.z = sum / QC(static_cast<long>(z.size()));
  else
    p.z = sum / static_cast<double>(z.size());
  return p;
}

template <class T>
SurfacePoint<T> chart_point(const ChartPoint<T>& c, const FibrationData& f) {
  std::vector<Poly> t = detail::chart_eigenvalues(f);
  const int m = static_cast<int>(t.size());
  const int n = m - 1;
  if (c.k < 0 || c.k > n)
    throw std::domain_error("chart index " + std::to_string(c.k) + " out of range 0.." +
                            std::to_string(n));
  auto tv = [&](int j) { return t[static_cast<std::size_t>(detail::cyc(j, m))].eval(c.lambda); };

  SurfacePoint<T> p;
  p.lambda = c.lambda;
  p.z = c.c1 * c.c2 - tv(c.k + 1);
  if (c.k == 0) {
    p.y = c.c2;
    p.x = c.c1;
    for (int i = 1; i <= n; ++i) p.x = p.x * (p.z + tv(i + 1));
  } else if (c.k == n) {
    p.x = c.c1;
    p.y = c.c2;
    for (int i = 0; i <= n - 1; ++i) p.y = p.y * (p.z + tv(i + 1));
  } else {
    p.x = c.c2;
    for (int i = c.k + 1; i <= n; ++i) p.x = p.x * (p.z + tv(i + 1));
    p.y = c.c1;
    for (int i = 0; i <= c.k - 1; ++i) p.y = p.y * (p.z + tv(i + 1));
  }
  return p;
}

template <class T>
ChartPoint<T> chart_transition(const ChartPoint<T>& c, const FibrationData& f, int direction) {
  if (direction != 1 && direction != -1)
    throw std::domain_error("transition direction must be +1 or -1");
  std::vector<Poly> t = detail::chart_eigenvalues(f);
  const int m = static_cast<int>(t.size());
  const int n = m - 1;
  if (c.k < 0 || c.k > n) throw std::domain_error("chart index out of range");
  const int kt = c.k + direction;
  if (kt < 0 || kt > n)
    throw std::domain_error("no chart " + std::to_string(kt) + " to transition into");

  // Pivot coordinate that must be invertible on the overlap.
  const T& pivot = direction > 0 ? (c.k == 0 ? c.c1 : c.c2) : (c.k == n ? c.c2 : c.c1);
  bool pivot_zero;
  if constexpr (is_exact_field_v<T>)
    pivot_zero = pivot.is_zero();
  else
    pivot_zero = pivot == T(0);
  if (pivot_zero) throw std::domain_error("not on the chart overlap: pivot coordinate is zero");

  SurfacePoint<T> image = chart_point(c, f);
  auto tv = [&](int j) { return t[static_cast<std::size_t>(detail::cyc(j, m))].eval(c.lambda); };

  ChartPoint<T> out;
  out.k = kt;
  out.lambda = c.lambda;
  if (direction > 0) {
    if (kt == n) {  // (x, xi_n)
      out.c1 = image.x;
      out.c2 = T(1) / pivot;
    } else {  // (xi_{k+1}, eta_{k+1})
      out.c1 = T(1) / pivot;
      out.c2 = pivot * (image.z + tv(kt + 1));
    }
  } else {
    if (kt == 0) {  // (eta_0, y)
      out.c1 = T(1) / pivot;
      out.c2 = image.y;
    } else {  // (xi_{k-1}, eta_{k-1})
      out.c1 = pivot * (image.z + tv(kt + 1));
      out.c2 = T(1) / pivot;
    }
  }
  return out;
}

}  // namespace adeq
