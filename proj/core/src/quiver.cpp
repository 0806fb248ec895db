#include "adeq/quiver.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>

namespace adeq {

int Quiver::arrow_index(const std::string& id) const {
  for (std::size_t k = 0; k < arrows.size(); ++k)
    if (arrows[k].id == id) return static_cast<int>(k);
  return -1;
}

const Arrow& Quiver::arrow(const std::string& id) const {
  int k = arrow_index(id);
  if (k < 0) throw std::domain_error("no arrow with id '" + id + "'");
  return arrows[static_cast<std::size_t>(k)];
}

namespace {

std::pair<int, int> undirected(std::pair<int, int> e) {
  return {std::min(e.first, e.second), std::max(e.first, e.second)};
}

// Default D/E orientation: away from the extending vertex, breadth-first.
std::vector<std::pair<int, int>> orient_away_from_zero(
    const std::vector<std::pair<int, int>>& edges, int nv) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(nv));
  for (const auto& [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());

  std::vector<int> parent(static_cast<std::size_t>(nv), -1);
  std::vector<bool> seen(static_cast<std::size_t>(nv), false);
  std::queue<int> bfs;
  bfs.push(0);
  seen[0] = true;
  while (!bfs.empty()) {
    int u = bfs.front();
    bfs.pop();
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (seen[static_cast<std::size_t>(v)]) continue;
      seen[static_cast<std::size_t>(v)] = true;
      parent[static_cast<std::size_t>(v)] = u;
      bfs.push(v);
    }
  }

  std::vector<std::pair<int, int>> directed;
  directed.reserve(edges.size());
  for (const auto& e : edges) {
    // Trees only here, so exactly one endpoint is the other's parent.
    if (parent[static_cast<std::size_t>(e.second)] == e.first)
      directed.push_back(e);
    else
      directed.emplace_back(e.second, e.first);
  }
  return directed;
}

}  // namespace

Quiver mckay_quiver(const DynkinType& type, const OrientationSpec& orientation) {
  validate_type(type);
  const auto edges = diagram_edges(type, /*extended=*/true);
  const int nv = extended_vertex_count(type);

  std::vector<std::pair<int, int>> directed;
  if (!orientation.directed_edges.empty()) {
    if (orientation.directed_edges.size() != edges.size())
      throw std::domain_error("orientation lists " +
                              std::to_string(orientation.directed_edges.size()) +
                              " arrows for " + std::to_string(edges.size()) + " edges");
    // Consume the directed pairs edge by canonical edge, so arrow k always
    // sits on canonical edge k regardless of the chosen directions.
    std::vector<bool> used(orientation.directed_edges.size(), false);
    for (const auto& e : edges) {
      bool matched = false;
      for (std::size_t k = 0; k < orientation.directed_edges.size(); ++k) {
        if (used[k]) continue;
        if (undirected(orientation.directed_edges[k]) != e) continue;
        directed.push_back(orientation.directed_edges[k]);
        used[k] = true;
        matched = true;
        break;
      }
      if (!matched)
        throw std::domain_error("orientation is missing edge {" + std::to_string(e.first) +
                                "," + std::to_string(e.second) + "}");
    }
  } else if (type.family == Family::A) {
    directed = edges;  // already cyclic k -> k+1
  } else {
    directed = orient_away_from_zero(edges, nv);
  }

  Quiver q;
  q.vertex_count = nv;
  q.origin = type;
  q.arrows.reserve(directed.size());
  for (std::size_t k = 0; k < directed.size(); ++k) {
    Arrow a;
    a.id = "a" + std::to_string(k);
    a.tail = directed[k].first;
    a.head = directed[k].second;
    a.kind = ArrowKind::Plain;
    q.arrows.push_back(std::move(a));
  }
  return q;
}

Quiver double_quiver(const Quiver& q) {
  if (q.doubled) throw std::domain_error("quiver is already doubled");
  for (const Arrow& a : q.arrows)
    if (a.kind != ArrowKind::Plain)
      throw std::domain_error("double_quiver expects plain arrows only");
  Quiver d = q;
  d.doubled = true;
  const std::size_t plain = q.arrows.size();
  for (std::size_t k = 0; k < plain; ++k) {
    Arrow rev;
    rev.id = q.arrows[k].id + "*";
    rev.tail = q.arrows[k].head;
    rev.head = q.arrows[k].tail;
    rev.kind = ArrowKind::Star;
    rev.star_of = static_cast<int>(k);
    d.arrows[k].star_of = static_cast<int>(plain + k);
    d.arrows.push_back(std::move(rev));
  }
  return d;
}

Quiver hat_quiver(const Quiver& q) {
  if (q.hatted) throw std::domain_error("quiver is already hatted");
  if (!q.doubled) throw std::domain_error("hat_quiver expects a doubled quiver");
  Quiver h = q;
  h.hatted = true;
  for (int i = 0; i < q.vertex_count; ++i) {
    Arrow loop;
    loop.id = "u" + std::to_string(i);
    loop.tail = i;
    loop.head = i;
    loop.kind = ArrowKind::Loop;
    h.arrows.push_back(std::move(loop));
  }
  return h;
}

TauPolys tau_from_fibration(const FibrationData& f) {
  TauPolys tau = tau_coords(f);  // validates, including the marks constraint
  DimVector d = marks(f.type);
  Poly sum;
  for (std::size_t i = 0; i < tau.size(); ++i) sum += QC(static_cast<long>(d[i])) * tau[i];
  if (!sum.is_zero())
    throw std::domain_error("tau violates the marks constraint (sum_i delta_i tau_i != 0)");
  return tau;
}

TauPolys tau_from_superpotential(const std::vector<Poly>& eta) {
  TauPolys tau(eta.size());
  for (std::size_t i = 0; i < eta.size(); ++i) tau[i] = eta[i].derivative();
  return tau;
}

bool validate_theta(const StabilityParam& theta, const DimVector& delta) {
  if (theta.size() != delta.size())
    throw std::domain_error("theta and delta have different lengths");
  long dot = 0;
  for (std::size_t i = 0; i < theta.size(); ++i)
    dot += static_cast<long>(theta[i]) * delta[i];
  return dot == 0;
}

bool theta_is_generic(const StabilityParam& theta, const DimVector& delta) {
  if (theta.size() != delta.size())
    throw std::domain_error("theta and delta have different lengths");
  // Enumerate 0 <= beta <= delta componentwise, excluding 0 and delta.
  const std::size_t m = delta.size();
  std::vector<int> beta(m, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < m && beta[i] == delta[i]) beta[i++] = 0;
    if (i == m) break;
    ++beta[i];
    bool zero = true, full = true;
    long dot = 0;
    for (std::size_t k = 0; k < m; ++k) {
      if (beta[k] != 0) zero = false;
      if (beta[k] != delta[k]) full = false;
      dot += static_cast<long>(theta[k]) * beta[k];
    }
    if (!zero && !full && dot == 0) return false;
  }
  return true;
}

}  // namespace adeq
