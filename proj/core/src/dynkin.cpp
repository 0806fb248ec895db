#include "adeq/dynkin.hpp"

#include "adeq/linalg.hpp"
#include "adeq/matrix.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace adeq {

std::string DynkinType::str() const {
  const char* fam = family == Family::A ? "A" : family == Family::D ? "D" : "E";
  return std::string(fam) + "(" + std::to_string(rank) + ")";
}

void validate_type(const DynkinType& t) {
  switch (t.family) {
    case Family::A:
      if (t.rank >= 1) return;
      break;
    case Family::D:
      if (t.rank >= 4) return;
      break;
    case Family::E:
      if (t.rank >= 6 && t.rank <= 8) return;
      break;
  }
  throw std::domain_error("invalid Dynkin type " + t.str());
}

DynkinType parse_type(const std::string& family, int rank) {
  DynkinType t;
  if (family == "A" || family == "a")
    t.family = Family::A;
  else if (family == "D" || family == "d")
    t.family = Family::D;
  else if (family == "E" || family == "e")
    t.family = Family::E;
  else
    throw std::domain_error("unknown family '" + family + "' (expected A, D or E)");
  t.rank = rank;
  validate_type(t);
  return t;
}

std::vector<std::pair<int, int>> diagram_edges(const DynkinType& t, bool extended) {
  validate_type(t);
  const int n = t.rank;
  std::vector<std::pair<int, int>> edges;
  switch (t.family) {
    case Family::A:
      // Finite: the path 1-2-...-n.  Extended: the (n+1)-cycle in cyclic
      // order, so arrow k runs k -> k+1 (A(1) keeps its double edge).
      if (!extended) {
        for (int k = 1; k < n; ++k) edges.emplace_back(k, k + 1);
      } else {
        for (int k = 0; k <= n; ++k) edges.emplace_back(k, (k + 1) % (n + 1));
      }
      return edges;
    case Family::D:
      for (int k = 1; k <= n - 3; ++k) edges.emplace_back(k, k + 1);
      edges.emplace_back(n - 2, n - 1);
      edges.emplace_back(n - 2, n);
      if (extended) edges.emplace_back(0, 2);
      break;
    case Family::E:
      edges = {{1, 3}, {2, 4}, {3, 4}, {4, 5}, {5, 6}};
      if (n >= 7) edges.emplace_back(6, 7);
      if (n == 8) edges.emplace_back(7, 8);
      if (extended) {
        if (n == 6) edges.emplace_back(0, 2);
        if (n == 7) edges.emplace_back(0, 1);
        if (n == 8) edges.emplace_back(0, 8);
      }
      break;
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

namespace {

CartanMatrix cartan_from_edges(const std::vector<std::pair<int, int>>& edges,
                               const std::vector<int>& labels) {
  const int m = static_cast<int>(labels.size());
  std::vector<int> pos(static_cast<std::size_t>(*std::max_element(labels.begin(), labels.end())) + 1, -1);
  for (int i = 0; i < m; ++i) pos[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])] = i;
  CartanMatrix c;
  c.labels = labels;
  c.entries.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), 0));
  for (int i = 0; i < m; ++i) c.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
  for (const auto& [u, v] : edges) {
    int i = pos[static_cast<std::size_t>(u)], j = pos[static_cast<std::size_t>(v)];
    c.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -= 1;
    c.entries[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] -= 1;
  }
  return c;
}

}  // namespace

CartanMatrix cartan_matrix(const DynkinType& t) {
  validate_type(t);
  std::vector<int> labels(static_cast<std::size_t>(t.rank));
  for (int k = 0; k < t.rank; ++k) labels[static_cast<std::size_t>(k)] = k + 1;
  return cartan_from_edges(diagram_edges(t, /*extended=*/false), labels);
}

CartanMatrix affine_cartan_matrix(const DynkinType& t) {
  validate_type(t);
  std::vector<int> labels(static_cast<std::size_t>(t.rank) + 1);
  for (int k = 0; k <= t.rank; ++k) labels[static_cast<std::size_t>(k)] = k;
  return cartan_from_edges(diagram_edges(t, /*extended=*/true), labels);
}

DimVector marks(const DynkinType& t) {
  CartanMatrix c = affine_cartan_matrix(t);
  const int m = static_cast<int>(c.labels.size());
  MatQ a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      a.at(i, j) = QC(c.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  auto basis = kernel_basis(a);
  if (basis.size() != 1)
    throw std::logic_error("affine Cartan matrix kernel is not one-dimensional");
  // Normalize so the extending vertex (index 0) has coordinate 1; entries of
  // the primitive kernel vector are then positive integers.
  const std::vector<QC>& v = basis.front();
  if (v[0].is_zero()) throw std::logic_error("kernel vector vanishes at the extending vertex");
  DimVector d(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    QC e = v[static_cast<std::size_t>(i)] / v[0];
    if (!e.im.is_zero() || boost::multiprecision::denominator(e.re) != 1 || e.re <= 0)
      throw std::logic_error("affine kernel vector is not positive-integral");
    d[static_cast<std::size_t>(i)] =
        static_cast<int>(boost::multiprecision::numerator(e.re).convert_to<long>());
  }
  return d;
}

std::vector<RootVector> positive_roots(const DynkinType& t) {
  validate_type(t);
  CartanMatrix c = cartan_matrix(t);
  const int n = t.rank;
  std::set<RootVector> seen;
  std::vector<RootVector> frontier;
  for (int k = 0; k < n; ++k) {
    RootVector e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(k)] = 1;
    seen.insert(e);
    frontier.push_back(std::move(e));
  }
  // Close under simple reflections, keeping positive vectors only.  For a
  // simply-laced system this reaches every positive root from the simple ones.
  while (!frontier.empty()) {
    std::vector<RootVector> next;
    for (const RootVector& r : frontier) {
      for (int j = 0; j < n; ++j) {
        int pairing = 0;
        for (int k = 0; k < n; ++k)
          pairing += c.entries[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] *
                     r[static_cast<std::size_t>(k)];
        RootVector s = r;
        s[static_cast<std::size_t>(j)] -= pairing;
        if (std::all_of(s.begin(), s.end(), [](int x) { return x >= 0; }) &&
            std::any_of(s.begin(), s.end(), [](int x) { return x > 0; }) &&
            seen.insert(s).second)
          next.push_back(std::move(s));
      }
    }
    frontier = std::move(next);
  }
  std::vector<RootVector> roots(seen.begin(), seen.end());
  std::sort(roots.begin(), roots.end(), [](const RootVector& a, const RootVector& b) {
    int ha = 0, hb = 0;
    for (int x : a) ha += x;
    for (int x : b) hb += x;
    if (ha != hb) return ha < hb;
    return a < b;
  });
  return roots;
}

// ---------------------------------------------------------------------------
// Fibration data
// ---------------------------------------------------------------------------

void validate_fibration(const FibrationData& f) {
  validate_type(f.type);
  const std::size_t want = static_cast<std::size_t>(f.type.rank) + 1;
  if (f.polys.size() != want)
    throw std::domain_error("fibration needs " + std::to_string(want) +
                            " coordinate polynomials, got " + std::to_string(f.polys.size()));
  if (f.form == FibrationData::Form::Eigenvalues && f.type.family != Family::A)
    throw std::domain_error("eigenvalue coordinates are defined for type A only");
  if (f.form == FibrationData::Form::VertexWeights) {
    DimVector d = marks(f.type);
    Poly sum;
    for (std::size_t i = 0; i < want; ++i)
      sum += QC(static_cast<long>(d[i])) * f.polys[i];
    if (!sum.is_zero())
      throw std::domain_error(
          "vertex-weight fibration violates the marks constraint (sum_i delta_i tau_i != 0)");
  }
}

std::vector<Poly> tau_coords(const FibrationData& f) {
  validate_fibration(f);
  if (f.form == FibrationData::Form::VertexWeights) return f.polys;
  const std::size_t m = f.polys.size();
  std::vector<Poly> tau(m);
  for (std::size_t i = 0; i < m; ++i) tau[i] = f.polys[i] - f.polys[(i + 1) % m];
  return tau;
}

std::vector<Poly> eigenvalue_coords(const FibrationData& f) {
  validate_fibration(f);
  if (f.type.family != Family::A)
    throw std::domain_error("eigenvalue coordinates are defined for type A only");
  if (f.form == FibrationData::Form::Eigenvalues) return f.polys;
  // Integrate tau_i = t_i - t_{i+1} with the gauge t_0 = 0; consistency of
  // the final step is the marks constraint checked above.
  const std::size_t m = f.polys.size();
  std::vector<Poly> t(m);
  for (std::size_t i = 1; i < m; ++i) t[i] = t[i - 1] - f.polys[i - 1];
  return t;
}

GenericityReport genericity_check(const FibrationData& f) {
  std::vector<Poly> tau = tau_coords(f);
  GenericityReport report;
  for (const RootVector& rho : positive_roots(f.type)) {
    Poly p;
    for (std::size_t k = 0; k < rho.size(); ++k) {
      if (rho[k] == 0) continue;
      // Finite vertex k+1 in the extended labeling.
      p += QC(static_cast<long>(rho[k])) * tau[k + 1];
    }
    GenericityViolation v;
    v.root = rho;
    v.pairing = p;
    if (p.is_zero()) {
      v.kind = GenericityViolation::Kind::IdenticallyZero;
      report.violations.push_back(std::move(v));
      continue;
    }
    Poly g = poly_gcd(p, p.derivative());
    if (g.degree() <= 0) continue;
    v.kind = GenericityViolation::Kind::RepeatedRoot;
    for (const PolyRoot& r : roots_with_exactness(g)) {
      v.repeated_at.push_back(r.approx);
      if (r.exact) v.repeated_at_exact.push_back(*r.exact);
    }
    report.violations.push_back(std::move(v));
  }
  report.generic = report.violations.empty();
  return report;
}

}  // namespace adeq
