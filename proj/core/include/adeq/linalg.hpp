#pragma once

// Exact linear algebra over the Gaussian rationals: incremental row spans
// (for algebra-closure computations), kernels (for the affine marks), and a
// fraction-free Bareiss rank over Gaussian integers used wherever a one-shot
// rank decision is made.  No floating point enters any rank decision.

#include "adeq/matrix.hpp"
#include "adeq/numeric.hpp"

#include <vector>

namespace adeq {

// Maintains a reduced row-echelon basis of a growing subspace of Q(i)^n.
class SpanTracker {
 public:
  explicit SpanTracker(std::size_t ambient_dim) : n_(ambient_dim) {}

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return rows_.size(); }

  // Returns true when v enlarged the span.
  bool insert(std::vector<QC> v);

  // Membership without insertion.
  bool contains(std::vector<QC> v) const;

  const std::vector<std::vector<QC>>& basis() const { return rows_; }

 private:
  // Reduces v against the current basis in place; returns pivot column or
  // n_ when v reduces to zero.
  std::size_t reduce(std::vector<QC>& v) const;

  std::size_t n_;
  std::vector<std::vector<QC>> rows_;    // echelon rows, pivot normalized to 1
  std::vector<std::size_t> pivot_cols_;  // strictly increasing? no: insertion order
};

// Rank via fraction-free (Bareiss) elimination: rows are scaled to Gaussian
// integers first, so every intermediate division is exact.
int exact_rank(const MatQ& m);

// Basis of the right kernel { v : m v = 0 }, exact.
std::vector<std::vector<QC>> kernel_basis(const MatQ& m);

// Solve m x = rhs if consistent (least-structure particular solution);
// returns empty vector when inconsistent.
std::vector<QC> solve_linear(const MatQ& m, const std::vector<QC>& rhs);

}  // namespace adeq
