#include "adeq/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace adeq {

namespace detail {

std::vector<Poly> chart_eigenvalues(const FibrationData& f) {
  validate_fibration(f);
  if (f.type.family != Family::A)
    throw std::domain_error("the explicit hypersurface geometry is type A only");
  return eigenvalue_coords(f);
}

}  // namespace detail

namespace {

using detail::cyc;

// Chart formulas (x, y, z) as polynomials in the chart coordinates, with
// configurable variable slots so the same builder serves the 3-variable
// identity checks and the 4-variable transition checks.
template <std::size_t N>
std::array<MPoly<N>, 3> chart_formulas(const std::vector<Poly>& t, int k, std::size_t vc1,
                                       std::size_t vc2, std::size_t vlam) {
  const int m = static_cast<int>(t.size());
  const int n = m - 1;
  auto tp = [&](int j) {
    return MPoly<N>::from_univariate(t[static_cast<std::size_t>(cyc(j, m))], vlam);
  };
  MPoly<N> z = MPoly<N>::var(vc1) * MPoly<N>::var(vc2) - tp(k + 1);
  MPoly<N> x, y;
  if (k == 0) {
    x = MPoly<N>::var(vc1);
    for (int i = 1; i <= n; ++i) x = x * (z + tp(i + 1));
    y = MPoly<N>::var(vc2);
  } else if (k == n) {
    x = MPoly<N>::var(vc1);
    y = MPoly<N>::var(vc2);
    for (int i = 0; i <= n - 1; ++i) y = y * (z + tp(i + 1));
  } else {
    x = MPoly<N>::var(vc2);
    for (int i = k + 1; i <= n; ++i) x = x * (z + tp(i + 1));
    y = MPoly<N>::var(vc1);
    for (int i = 0; i <= k - 1; ++i) y = y * (z + tp(i + 1));
  }
  return {x, y, z};
}

// Normal form modulo w * pivot = 1: cancel matched powers of the two
// variables in every monomial.  Distinct normal forms are independent in the
// localized ring, so a zero normal form proves equality of rational maps.
MPoly4 reduce_inverse_pair(const MPoly4& p, std::size_t a, std::size_t b) {
  MPoly4 out;
  for (const auto& [e, c] : p.terms()) {
    MPoly4::Exponents d = e;
    int shared = std::min(d[a], d[b]);
    d[a] -= shared;
    d[b] -= shared;
    out += MPoly4::monomial(d, c);
  }
  return out;
}

}  // namespace

ThreefoldEquation threefold_equation(const FibrationData& f) {
  std::vector<Poly> t = detail::chart_eigenvalues(f);
  ThreefoldEquation eq;
  eq.n = static_cast<int>(t.size()) - 1;
  eq.t = t;
  MPoly4 prod = MPoly4::constant(QC(1));
  for (const Poly& tj : t)
    prod = prod * (MPoly4::var(kVarZ) + MPoly4::from_univariate(tj, kVarLambda));
  eq.poly = MPoly4::var(kVarX) * MPoly4::var(kVarY) - prod;

  MPoly4::Exponents xy{};
  xy[kVarX] = 1;
  xy[kVarY] = 1;
  if (!(eq.poly.coeff(xy) - QC(1)).is_zero() || eq.poly.degree_in(kVarZ) != eq.n + 1)
    throw std::logic_error("threefold equation failed its structural checks");
  return eq;
}

SurfacePointC to_float(const SurfacePointQ& p) {
  return {p.x.to_cd(), p.y.to_cd(), p.z.to_cd(), p.lambda.to_cd()};
}

ChartPointC to_float(const ChartPointQ& c) {
  return {c.k, c.c1.to_cd(), c.c2.to_cd(), c.lambda.to_cd()};
}

SingularLocus singular_points(const FibrationData& f) {
  std::vector<Poly> t = detail::chart_eigenvalues(f);
  const int m = static_cast<int>(t.size());

  SingularLocus locus;
  locus.generic = genericity_check(f).generic;
  const double tol = 1e-8;

  std::vector<SingularPoint> hits;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      Poly d = t[static_cast<std::size_t>(i)] - t[static_cast<std::size_t>(j)];
      if (d.degree() < 0)
        throw std::domain_error("eigenvalues " + std::to_string(i) + " and " + std::to_string(j) +
                                " coincide identically; the singular locus is not finite");
      if (d.degree() == 0) continue;
      for (const PolyRoot& r : roots_with_exactness(d)) {
        SingularPoint hit;
        hit.lambda_star = r.approx;
        hit.lambda_exact = r.exact;
        if (hit.lambda_exact) {
          QC ti = t[static_cast<std::size_t>(i)].eval(*hit.lambda_exact);
          QC tj = t[static_cast<std::size_t>(j)].eval(*hit.lambda_exact);
          if (!(ti - tj).is_zero())
            throw std::logic_error("exact root fails its defining equation");
          hit.z_exact = -ti;
          hit.z_star = hit.z_exact->to_cd();
          hit.lambda_star = hit.lambda_exact->to_cd();
        } else {
          CD ti = t[static_cast<std::size_t>(i)].eval(hit.lambda_star);
          hit.z_star = -ti;
        }
        hit.pairs.emplace_back(i, j);

        bool merged = false;
        for (SingularPoint& h : hits) {
          bool same;
          if (h.lambda_exact && hit.lambda_exact)
            same = (*h.lambda_exact - *hit.lambda_exact).is_zero() &&
                   (*h.z_exact - *hit.z_exact).is_zero();
          else
            same = std::abs(h.lambda_star - hit.lambda_star) <=
                       tol * (1.0 + std::abs(h.lambda_star)) &&
                   std::abs(h.z_star - hit.z_star) <= tol * (1.0 + std::abs(h.z_star));
          if (!same) continue;
          if (std::find(h.pairs.begin(), h.pairs.end(), hit.pairs.front()) == h.pairs.end())
            h.pairs.push_back(hit.pairs.front());
          if (!h.lambda_exact && hit.lambda_exact) {
            h.lambda_exact = hit.lambda_exact;
            h.z_exact = hit.z_exact;
            h.lambda_star = hit.lambda_star;
            h.z_star = hit.z_star;
          }
          merged = true;
          break;
        }
        if (!merged) hits.push_back(std::move(hit));
      }
    }
  }

  std::sort(hits.begin(), hits.end(), [](const SingularPoint& a, const SingularPoint& b) {
    auto key = [](const SingularPoint& p) {
      return std::array<double, 4>{p.lambda_star.real(), p.lambda_star.imag(), p.z_star.real(),
                                   p.z_star.imag()};
    };
    return key(a) < key(b);
  });
  for (SingularPoint& h : hits) std::sort(h.pairs.begin(), h.pairs.end());
  locus.points = std::move(hits);
  return locus;
}

SemiInvariants semi_invariants_type_a(int n) {
  if (n < 1) throw std::domain_error("semi-invariant generators need n >= 1");
  const int m = n + 1;

  SemiInvariants s;
  s.n = n;
  auto blank = [&](std::string name) {
    SemiInvariantMonomial g;
    g.name = std::move(name);
    g.x_exp.assign(static_cast<std::size_t>(m), 0);
    g.y_exp.assign(static_cast<std::size_t>(m), 0);
    g.weight.assign(static_cast<std::size_t>(m), 0);
    return g;
  };
  // The forward arrow x_i shifts weight by e_{i+1} - e_i, its reverse y_i by
  // the negative.
  auto weight_of = [&](const SemiInvariantMonomial& g) {
    std::vector<int> w(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < m; ++i) {
      int delta = g.x_exp[static_cast<std::size_t>(i)] - g.y_exp[static_cast<std::size_t>(i)];
      w[static_cast<std::size_t>((i + 1) % m)] += delta;
      w[static_cast<std::size_t>(i)] -= delta;
    }
    return w;
  };

  for (int j = 0; j <= n - 1; ++j) {
    SemiInvariantMonomial u = blank("u_" + std::to_string(j));
    for (int i = 0; i <= j; ++i) u.x_exp[static_cast<std::size_t>(i)] = 1;
    u.weight = weight_of(u);
    s.u.push_back(std::move(u));

    SemiInvariantMonomial v = blank("v_" + std::to_string(j));
    for (int i = j + 1; i <= n; ++i) v.y_exp[static_cast<std::size_t>(i)] = 1;
    v.weight = weight_of(v);
    s.v.push_back(std::move(v));
  }

  // f_k = v_0 ... v_{n-1-k} u_{n-k} ... u_{n-1}; each has the full stability
  // character (-n, 1, ..., 1).
  for (int k = 0; k <= n; ++k) {
    SemiInvariantMonomial g = blank("f_" + std::to_string(k));
    for (int j = 0; j <= n - 1 - k; ++j)
      for (int i = 0; i < m; ++i)
        g.y_exp[static_cast<std::size_t>(i)] += s.v[static_cast<std::size_t>(j)].y_exp
            [static_cast<std::size_t>(i)];
    for (int j = n - k; j <= n - 1; ++j)
      for (int i = 0; i < m; ++i)
        g.x_exp[static_cast<std::size_t>(i)] += s.u[static_cast<std::size_t>(j)].x_exp
            [static_cast<std::size_t>(i)];
    g.weight = weight_of(g);
    for (int i = 0; i < m; ++i)
      if (g.weight[static_cast<std::size_t>(i)] != (i == 0 ? -n : 1))
        throw std::logic_error("semi-invariant generator has the wrong weight");
    s.f.push_back(std::move(g));
  }

  // z_a ... z_b contributes x_i y_i for every i in the run.
  auto zrun = [&](int a, int b) {
    std::vector<int> e(static_cast<std::size_t>(m), 0);
    for (int i = a; i <= b; ++i) e[static_cast<std::size_t>(i)] = 1;
    return e;
  };
  auto zrun_text = [&](int a, int b) {
    std::string out;
    for (int i = a; i <= b; ++i) out += " z_" + std::to_string(i);
    return out;
  };
  auto vec_add = [&](std::vector<int> a, const std::vector<int>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  };
  auto add_rel = [&](std::string text, std::vector<int> lx, std::vector<int> ly,
                     std::vector<int> rx, std::vector<int> ry) {
    MonomialRelation r;
    r.text = std::move(text);
    r.lhs_x = std::move(lx);
    r.lhs_y = std::move(ly);
    r.rhs_x = std::move(rx);
    r.rhs_y = std::move(ry);
    r.holds = r.lhs_x == r.rhs_x && r.lhs_y == r.rhs_y;
    s.relations.push_back(std::move(r));
  };

  const std::vector<int> ones = zrun(0, n);
  const std::vector<int> zeros(static_cast<std::size_t>(m), 0);
  for (int j = 0; j <= n - 1; ++j) {
    const auto& uj = s.u[static_cast<std::size_t>(j)];
    const auto& vj = s.v[static_cast<std::size_t>(j)];
    add_rel("x v_" + std::to_string(j) + " = u_" + std::to_string(j) + zrun_text(j + 1, n),
            ones, vj.y_exp, vec_add(uj.x_exp, zrun(j + 1, n)), zrun(j + 1, n));
    add_rel("y u_" + std::to_string(j) + " = v_" + std::to_string(j) + zrun_text(0, j),
            uj.x_exp, ones, zrun(0, j), vec_add(vj.y_exp, zrun(0, j)));
  }
  for (int j = 1; j <= n - 1; ++j) {
    for (int k = 0; k < j; ++k) {
      const auto& uj = s.u[static_cast<std::size_t>(j)];
      const auto& vj = s.v[static_cast<std::size_t>(j)];
      const auto& uk = s.u[static_cast<std::size_t>(k)];
      const auto& vk = s.v[static_cast<std::size_t>(k)];
      add_rel("u_" + std::to_string(j) + " v_" + std::to_string(k) + " = u_" + std::to_string(k) +
                  " v_" + std::to_string(j) + zrun_text(k + 1, j),
              uj.x_exp, vk.y_exp, vec_add(uk.x_exp, zrun(k + 1, j)),
              vec_add(vj.y_exp, zrun(k + 1, j)));
    }
  }
  return s;
}

bool chart_identity_check(int k, const FibrationData& f) {
  std::vector<Poly> t = detail::chart_eigenvalues(f);
  const int n = static_cast<int>(t.size()) - 1;
  if (k < 0 || k > n) throw std::domain_error("chart index out of range");
  std::array<MPoly3, 3> sub = chart_formulas<3>(t, k, 0, 1, 2);
  ThreefoldEquation eq = threefold_equation(f);
  MPoly3 composed = eq.poly.eval_poly<3>({sub[0], sub[1], sub[2], MPoly3::var(2)});
  return composed.is_zero();
}

bool transition_identity_check(int k, int direction, const FibrationData& f) {
  if (direction != 1 && direction != -1)
    throw std::domain_error("transition direction must be +1 or -1");
  std::vector<Poly> t = detail::chart_eigenvalues(f);
  const int m = static_cast<int>(t.size());
  const int n = m - 1;
  const int kt = k + direction;
  if (k < 0 || k > n || kt < 0 || kt > n)
    throw std::domain_error("chart index out of range for this transition");

  // Variables: c1 = 0, c2 = 1, lambda = 2, w = 3 with w standing for the
  // inverse of the pivot coordinate.
  std::array<MPoly4, 3> src = chart_formulas<4>(t, k, 0, 1, 2);
  const std::size_t pivot = direction > 0 ? (k == 0 ? 0u : 1u) : (k == n ? 1u : 0u);
  const MPoly4 w = MPoly4::var(3);
  auto tp = [&](int j) { return MPoly4::from_univariate(t[static_cast<std::size_t>(cyc(j, m))], 2); };

  MPoly4 c1p, c2p;
  if (direction > 0) {
    if (kt == n) {
      c1p = src[0];
      c2p = w;
    } else {
      c1p = w;
      c2p = MPoly4::var(pivot) * (src[2] + tp(kt + 1));
    }
  } else {
    if (kt == 0) {
      c1p = w;
      c2p = src[1];
    } else {
      c1p = MPoly4::var(pivot) * (src[2] + tp(kt + 1));
      c2p = w;
    }
  }

  std::array<MPoly4, 3> tgt = chart_formulas<4>(t, kt, 0, 1, 2);
  const std::array<MPoly4, 4> subs = {c1p, c2p, MPoly4::var(2), MPoly4::var(3)};
  for (int c = 0; c < 3; ++c) {
    MPoly4 composed = tgt[static_cast<std::size_t>(c)].eval_poly<4>(subs);
    if (!reduce_inverse_pair(composed - src[static_cast<std::size_t>(c)], pivot, 3).is_zero())
      return false;
  }
  return true;
}

FiberProbeReport fiber_probe(const SurfacePointC& p, const FibrationData& f, int samples,
                             std::uint64_t seed) {
  if (samples < 1) throw std::domain_error("samples must be positive");
  if (!genericity_check(f).generic)
    throw std::domain_error("fiber probe requires a generic fibration");
  std::vector<Poly> t = detail::chart_eigenvalues(f);
  const int m = static_cast<int>(t.size());
  const int n = m - 1;

  const double scale =
      1.0 + std::max({std::abs(p.x), std::abs(p.y), std::abs(p.z), std::abs(p.lambda)});
  const double tol = 1e-8 * scale;
  const double eps = 1e-10 * scale;

  auto verify = [&](const ChartPointC& c) {
    SurfacePointC q = chart_point(c, f);
    return std::abs(q.x - p.x) <= tol && std::abs(q.y - p.y) <= tol &&
           std::abs(q.z - p.z) <= tol && std::abs(q.lambda - p.lambda) <= tol;
  };

  Rng rng(seed);
  FiberProbeReport report;
  std::vector<ChartPointC> candidates;
  std::vector<int> cand_chart;

  for (int k = 0; k <= n; ++k) {
    ChartProbe probe;
    probe.k = k;
    auto zfac = [&](int i) {
      return p.z + t[static_cast<std::size_t>(cyc(i + 1, m))].eval(p.lambda);
    };
    const CD zeta = zfac(k);
    CD px(1, 0), py(1, 0);  // forced-completion denominators
    if (k == 0) {
      for (int i = 1; i <= n; ++i) px *= zfac(i);
    } else if (k == n) {
      for (int i = 0; i <= n - 1; ++i) py *= zfac(i);
    } else {
      for (int i = k + 1; i <= n; ++i) px *= zfac(i);
      for (int i = 0; i <= k - 1; ++i) py *= zfac(i);
    }

    // Forced completions: invert whichever defining equations pin a
    // coordinate, then fill the other through c1 c2 = zeta.
    std::vector<ChartPointC> forced;
    auto push = [&](CD c1, CD c2) {
      ChartPointC c{k, c1, c2, p.lambda};
      if (!verify(c)) return;
      for (const ChartPointC& o : forced)
        if (std::abs(o.c1 - c1) <= tol && std::abs(o.c2 - c2) <= tol) return;
      forced.push_back(c);
    };
    if (k == 0) {
      const CD c2 = p.y;
      if (std::abs(px) > eps) push(p.x / px, c2);
      if (std::abs(c2) > eps) push(zeta / c2, c2);
    } else if (k == n) {
      const CD c1 = p.x;
      if (std::abs(py) > eps) push(c1, p.y / py);
      if (std::abs(c1) > eps) push(c1, zeta / c1);
    } else {
      if (std::abs(px) > eps && std::abs(py) > eps) push(p.y / py, p.x / px);
      if (std::abs(py) > eps && std::abs(p.y / py) > eps) push(p.y / py, zeta / (p.y / py));
      if (std::abs(px) > eps && std::abs(p.x / px) > eps) push(zeta / (p.x / px), p.x / px);
    }
    if (!forced.empty()) probe.isolated = forced.front();

    // One-parameter sweep: pin either coordinate at a random value and
    // complete the other through the bilinear relation.  Isolated preimages
    // essentially never verify under a random pin; a fiber curve does for
    // every sample.
    int hits = 0;
    for (int s = 0; s < samples; ++s) {
      const CD r = std::polar(0.5 + 1.5 * rng.next_unit(),
                              2.0 * std::numbers::pi_v<double> * rng.next_unit());
      const CD other = std::abs(zeta) > eps ? zeta / r : CD(0, 0);
      bool hit = verify(ChartPointC{k, r, other, p.lambda}) ||
                 verify(ChartPointC{k, other, r, p.lambda});
      if (hit) ++hits;
    }
    probe.family_hits = hits;
    probe.family = hits >= std::max(3, samples / 2);
    if (probe.isolated) {
      candidates.push_back(*probe.isolated);
      cand_chart.push_back(k);
    }
    report.charts.push_back(std::move(probe));
  }

  // Identify forced preimages found in adjacent charts via the transition
  // maps; the classes count distinct resolved points.
  std::vector<std::size_t> parent(candidates.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto same_point = [&](const ChartPointC& a, const ChartPointC& b) {
    auto close = [](CD u, CD v) {
      return std::abs(u - v) <= 1e-6 * (1.0 + std::max(std::abs(u), std::abs(v)));
    };
    return a.k == b.k && close(a.c1, b.c1) && close(a.c2, b.c2) && close(a.lambda, b.lambda);
  };
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      if (cand_chart[j] != cand_chart[i] + 1) continue;
      const ChartPointC& c = candidates[i];
      const CD up_pivot = c.k == 0 ? c.c1 : c.c2;
      if (std::abs(up_pivot) <= eps) continue;
      if (same_point(chart_transition(c, f, +1), candidates[j])) parent[find(i)] = find(j);
    }
  }
  int classes = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (find(i) == i) ++classes;
  report.distinct_preimages = classes;

  bool any_family = false;
  for (const ChartProbe& probe : report.charts) any_family |= probe.family;
  report.dimension_estimate = any_family ? 1 : (candidates.empty() ? -1 : 0);
  return report;
}

}  // namespace adeq
