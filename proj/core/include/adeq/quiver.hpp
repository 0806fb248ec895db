#pragma once

// The extended Dynkin quiver, its double (reverse partner arrows), the hatted
// quiver (one loop per vertex), deformation polynomials tau, and stability
// parameters.
//
// Arrow identifiers are stable strings: plain arrows "a0","a1",... in
// canonical edge order, their reverses "a0*","a1*",..., loops "u0","u1",...
// indexed by vertex.

#include "adeq/dynkin.hpp"
#include "adeq/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace adeq {

enum class ArrowKind { Plain, Star, Loop };

struct Arrow {
  std::string id;
  int tail = 0;
  int head = 0;
  ArrowKind kind = ArrowKind::Plain;
  // Index (into Quiver::arrows) of the reverse partner for plain/star arrows
  // of a doubled quiver; -1 when absent.
  int star_of = -1;
};

struct Quiver {
  int vertex_count = 0;
  std::vector<Arrow> arrows;
  bool doubled = false;
  bool hatted = false;
  std::optional<DynkinType> origin;

  int arrow_index(const std::string& id) const;  // -1 when missing
  const Arrow& arrow(const std::string& id) const;
};

// Optional explicit orientation: one directed pair per canonical edge.  The
// multiset of underlying undirected edges must equal the extended diagram's.
struct OrientationSpec {
  std::vector<std::pair<int, int>> directed_edges;  // empty = default
};

// The extended Dynkin quiver with one plain arrow per edge.  Default
// orientation: type A cyclically k -> k+1; types D/E oriented away from the
// extending vertex (breadth-first from vertex 0).
Quiver mckay_quiver(const DynkinType& type, const OrientationSpec& orientation = {});

// Adds the reverse partner a*: j -> i of every plain arrow a: i -> j.
Quiver double_quiver(const Quiver& q);

// Adds one loop per vertex to a doubled quiver.
Quiver hat_quiver(const Quiver& q);

// The doubled extended quiver with loops, in one step.
inline Quiver hatted_quiver(const DynkinType& type, const OrientationSpec& orientation = {}) {
  return hat_quiver(double_quiver(mckay_quiver(type, orientation)));
}

using TauPolys = std::vector<Poly>;       // per extended vertex
using StabilityParam = std::vector<int>;  // per extended vertex

// Per-vertex deformation polynomials; for type A eigenvalue input,
// tau_i = t_i - t_{i+1} (indices mod n+1).  Always verifies the marks
// constraint sum_i delta_i tau_i = 0 exactly.
TauPolys tau_from_fibration(const FibrationData& f);

// tau_i = eta_i' (formal derivative of the superpotential coefficients).
TauPolys tau_from_superpotential(const std::vector<Poly>& eta);

// theta . delta == 0.
bool validate_theta(const StabilityParam& theta, const DimVector& delta);

// Sufficient genericity of theta: theta(beta) != 0 for every dimension vector
// 0 < beta < delta (componentwise).  For such theta, semistable = stable.
bool theta_is_generic(const StabilityParam& theta, const DimVector& delta);

}  // namespace adeq
