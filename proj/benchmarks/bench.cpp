// Micro-benchmarks for the hot paths: exact thin construction, relation
// residuals, Burnside closure, the symbolic chart identity, and the damped
// least-squares solver.

#include <benchmark/benchmark.h>

#include "adeq/geometry.hpp"
#include "adeq/quiver.hpp"
#include "adeq/rep.hpp"
#include "adeq/solver.hpp"

using namespace adeq;

namespace {

FibrationData fibration_a(int n, std::vector<Poly> t) {
  FibrationData f;
  f.type = parse_type("A", n);
  f.form = FibrationData::Form::Eigenvalues;
  f.polys = std::move(t);
  validate_fibration(f);
  return f;
}

FibrationData centered_cubic(int n) {
  // t_j = c_j * lambda with coefficients summing to zero
  std::vector<Poly> t;
  long sum = 0;
  for (int j = 0; j < n; ++j) {
    const long c = j + 1;
    sum += c;
    t.push_back(Poly{QC(0), QC(c)});
  }
  t.push_back(Poly{QC(0), QC(-sum)});
  return fibration_a(n, std::move(t));
}

void construct_and_validate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  FibrationData f = centered_cubic(n);
  TauPolys tau = tau_from_fibration(f);
  Rng rng(7);
  for (auto _ : state) {
    ConstructOptions o;
    o.lambda = QC(2);
    o.z_value = QC(1);
    o.seed = rng.next_u64();
    Representation<QC> v = construct_type_a(f, o);
    benchmark::DoNotOptimize(relation_residual(v, tau).exactly_zero);
  }
}
BENCHMARK(construct_and_validate)->Arg(1)->Arg(3)->Arg(6);

void burnside_closure(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  FibrationData f = centered_cubic(n);
  ConstructOptions o;
  o.lambda = QC(2);
  o.z_value = QC(1);
  Representation<QC> v = construct_type_a(f, o);
  for (auto _ : state) benchmark::DoNotOptimize(is_simple_burnside(v));
}
BENCHMARK(burnside_closure)->Arg(2)->Arg(4);

void chart_identity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  FibrationData f = centered_cubic(n);
  for (auto _ : state) {
    bool all = true;
    for (int k = 0; k <= n; ++k) all = all && chart_identity_check(k, f);
    benchmark::DoNotOptimize(all);
  }
}
BENCHMARK(chart_identity)->Arg(2)->Arg(4);

void moment_map_solve(benchmark::State& state) {
  DynkinType ty = parse_type("D", 4);
  TauPolys tau{Poly::constant(QC(1)), Poly::constant(QC(1)), Poly::constant(QC(-2)),
               Poly::constant(QC(1)), Poly::constant(QC(1))};
  std::uint64_t seed = 1;
  for (auto _ : state) {
    SolveOptions so;
    so.seed = seed++;
    benchmark::DoNotOptimize(solve_moment_map(ty, tau, CD(0, 0), so).converged);
  }
}
BENCHMARK(moment_map_solve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
