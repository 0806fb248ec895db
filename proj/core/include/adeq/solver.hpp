#pragma once

// Producing points of the relation variety at the affine dimension vector:
// an exact thin construction in the cyclic case, and a damped least-squares
// solver for the moment-map equations in the other types.  Loops are always
// pinned to lambda * I, so solutions land directly on the scalar-loop locus.

#include "adeq/quiver.hpp"
#include "adeq/rep.hpp"

#include <cstdint>
#include <vector>

namespace adeq {

// How a slot with vanishing cycle product z_i splits its (x_i, y_i) pair.
enum class ZeroSlotPolicy {
  XOneYZero,    // (x_i, y_i) = (x choice or 1, 0): keeps the forward cycle alive
  XZeroYRandom  // (x_i, y_i) = (0, random nonzero): breaks it the other way
};

struct ConstructOptions {
  QC lambda{};
  QC z_value{};
  std::vector<QC> x_choices;              // per slot, nonzero; empty = random
  std::vector<ZeroSlotPolicy> zero_slots;  // per slot; empty = all XOneYZero
  std::uint64_t seed = 0;
};

// Exact thin representation with z_i = z_value + t_{i+1}(lambda): whenever
// z_i != 0 the slot carries (x_i, z_i / x_i); a vanishing slot follows its
// ZeroSlotPolicy.  The relations hold exactly by construction.
Representation<QC> construct_type_a(const FibrationData& f, const ConstructOptions& opts);

struct SolveOptions {
  int max_iterations = 2000;
  double residual_target = 1e-8;
  double damping = 1e-3;  // initial Levenberg-Marquardt damping
  std::uint64_t seed = 0;
  bool zero_start = false;  // start from the zero point instead of a random one
};

struct SolveResult {
  Representation<CD> rep;
  double residual = 0.0;  // sqrt of the summed squared vertex residuals
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;  // residual after each accepted step
};

// Damped least squares on the doubled-arrow matrices with loops pinned to
// lambda * I; minimizes the summed squared vertex relation residuals.
// Throws when the central constraint sum_i delta_i tau_i(lambda) fails;
// budget exhaustion returns the best point found with converged = false.
SolveResult solve_moment_map(const DynkinType& type, const TauPolys& tau, CD lambda,
                             const SolveOptions& opts);

// Max relative discrepancy between the analytic gradient of the solver
// objective and central finite differences with step h, at a random point.
double gradient_fd_check(const DynkinType& type, const TauPolys& tau, CD lambda,
                         std::uint64_t seed, double h);

struct SampleBatch {
  std::vector<Representation<QC>> exact;  // cyclic-type thin constructions
  std::vector<SolveResult> numeric;       // least-squares solutions otherwise
  double simple_fraction = -1.0;          // fraction simple (exact path only)
};

// `count` valid representations at the given base point: exact thin
// constructions with random slot data for type A, least-squares solves with
// per-sample seeds for types D and E.
SampleBatch random_valid_sample(const FibrationData& f, const QC& lambda, int count,
                                std::uint64_t seed);

}  // namespace adeq
