#pragma once

// Root-system and Cartan data for the finite and extended ADE diagrams, plus
// the genericity (transversality) test on a polynomial fibration of the
// Cartan algebra.
//
// Vertex labeling (fixed here, inherited by every other module):
//   * A(n): extended diagram is the (n+1)-cycle 0-1-...-n-0 with extending
//     vertex 0; finite vertices are 1..n along the path.  A(1) carries a
//     double edge between 0 and 1.
//   * D(n), n >= 4: finite vertices use the standard labeling with the path
//     1-2-...-(n-2) and the fork (n-2)-(n-1), (n-2)-n; the extending vertex 0
//     attaches to vertex 2.
//   * E(6): path 1-3-4-5-6 with 2 attached to 4; extending vertex 0 attaches
//     to 2.  E(7): same core extended by 7; 0 attaches to 1.  E(8): core
//     extended by 8; 0 attaches to 8.

#include "adeq/numeric.hpp"
#include "adeq/poly.hpp"

#include <string>
#include <utility>
#include <vector>

namespace adeq {

enum class Family { A, D, E };

struct DynkinType {
  Family family = Family::A;
  int rank = 1;

  std::string str() const;
};

// Throws std::domain_error unless (family, rank) is one of A(n>=1), D(n>=4),
// E(6|7|8).
void validate_type(const DynkinType& t);
DynkinType parse_type(const std::string& family, int rank);

using IntMat = std::vector<std::vector<int>>;
using DimVector = std::vector<int>;
using RootVector = std::vector<int>;  // simple-root coordinates, finite vertices 1..n

struct CartanMatrix {
  IntMat entries;
  std::vector<int> labels;  // vertex labels in row/column order
};

// Undirected edge lists in the canonical order used for arrow naming.
// Finite edges connect vertices 1..n; the extended list prepends nothing --
// it is ordered lexicographically for D/E and cyclically for A.
std::vector<std::pair<int, int>> diagram_edges(const DynkinType& t, bool extended);

// Extending-vertex degree check helper: total vertex count of the extended
// diagram (rank + 1).
inline int extended_vertex_count(const DynkinType& t) { return t.rank + 1; }

CartanMatrix cartan_matrix(const DynkinType& t);
CartanMatrix affine_cartan_matrix(const DynkinType& t);

// Primitive positive kernel vector of the affine Cartan matrix, normalized so
// the extending vertex (index 0) has coordinate 1.  Computed as an exact
// kernel, not table lookup.
DimVector marks(const DynkinType& t);

// All positive roots of the finite root system, in graded lexicographic
// order (by height, then lexicographic on coordinates).
std::vector<RootVector> positive_roots(const DynkinType& t);

// ---------------------------------------------------------------------------
// Fibration data
// ---------------------------------------------------------------------------

// A polynomial family lambda -> Cartan parameter.  Two coordinatizations:
//   * VertexWeights: one polynomial tau_i per extended vertex with
//     sum_i marks_i * tau_i = 0 (any type).
//   * Eigenvalues: type A only; n+1 polynomials t_i with tau_i = t_i - t_{i+1}
//     (indices mod n+1).
struct FibrationData {
  enum class Form { Eigenvalues, VertexWeights };

  DynkinType type;
  Form form = Form::Eigenvalues;
  std::vector<Poly> polys;  // one per extended vertex
};

// Structural validation: type valid, coordinate count right, eigenvalue form
// restricted to type A, and (for vertex-weight form) sum marks_i tau_i = 0.
// Throws std::domain_error describing the violation.
void validate_fibration(const FibrationData& f);

// Per-vertex tau_i polynomials (converting from eigenvalue form if needed).
std::vector<Poly> tau_coords(const FibrationData& f);

// Eigenvalue polynomials t_0..t_n for type A.  Vertex-weight input is
// integrated with the gauge choice t_0 = 0 (eigenvalues are only determined
// up to a common shift).  Throws for non-A types.
std::vector<Poly> eigenvalue_coords(const FibrationData& f);

struct GenericityViolation {
  enum class Kind { IdenticallyZero, RepeatedRoot };

  RootVector root;
  Poly pairing;  // p_rho(lambda) = rho paired with the fibration
  Kind kind = Kind::IdenticallyZero;
  // Locations of repeated roots (kind == RepeatedRoot): numeric always,
  // exact when the repeated factor can be solved over Q(i).
  std::vector<CD> repeated_at;
  std::vector<QC> repeated_at_exact;  // subset of the above that is exact
};

struct GenericityReport {
  bool generic = true;
  std::vector<GenericityViolation> violations;
};

// Transversality of the fibration to the root hyperplanes: for each positive
// root rho, p_rho = sum_k rho_k tau_k (finite vertices) must be nonzero and
// squarefree.  For type A eigenvalue input this is exactly t_i - t_j.
GenericityReport genericity_check(const FibrationData& f);

}  // namespace adeq
