#include <benchmark/benchmark.h>

#include "qpsh/cones.hpp"
#include "qpsh/pluripotential.hpp"
#include "qpsh/random_inputs.hpp"

namespace {

using namespace qpsh;

void BM_MooreDet(benchmark::State& state) {
  Rng rng(1);
  const HermitianQMatrix a = random_hermitian(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(moore_det(a));
}
BENCHMARK(BM_MooreDet)->DenseRange(2, 4);

void BM_MooreDetByCycles(benchmark::State& state) {
  Rng rng(1);
  const HermitianQMatrix a = random_hermitian(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(moore_det_by_cycles(a));
}
BENCHMARK(BM_MooreDetByCycles)->DenseRange(2, 4);

void BM_WedgePower(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const TwistedForm w = omega0(n);
  for (auto _ : state) benchmark::DoNotOptimize(wedge_power(w, n));
}
BENCHMARK(BM_WedgePower)->DenseRange(2, 4);

void BM_Hessian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ScalarField f(n, Expression::log_cosh_radius(0.3));
  Rng rng(2);
  const std::vector<double> x = random::random_point(rng, 4 * n);
  for (auto _ : state) benchmark::DoNotOptimize(hessian(f, x));
}
BENCHMARK(BM_Hessian)->DenseRange(2, 4);

void BM_DeltaMultiplicativity(benchmark::State& state) {
  Rng rng(3);
  const PolyForm w = random::random_poly_form(rng, 2, 0, -1, 3, 4, 4);
  const PolyForm e = random::random_poly_form(rng, 2, 0, -1, 3, 4, 4);
  for (auto _ : state) benchmark::DoNotOptimize(baston_delta(wedge(w, baston_delta(e))));
}
BENCHMARK(BM_DeltaMultiplicativity);

void BM_WeakConeRefutation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(4);
  const HermitianQMatrix a = random_hermitian(rng, static_cast<std::size_t>(n));
  const TwistedForm w = herm_to_form(a);
  for (auto _ : state) benchmark::DoNotOptimize(is_weakly_positive_sampled(w, 1000, 5));
}
BENCHMARK(BM_WeakConeRefutation)->DenseRange(2, 3);

void BM_MaPairing(benchmark::State& state) {
  const Domain d = Domain::box(8, -1.0, 1.0, static_cast<int>(state.range(0)));
  const ScalarField f = sqrt_norm_family(2, 0.1), phi = bump_weight(2, d);
  for (auto _ : state) benchmark::DoNotOptimize(ma_pairing(f, phi, d).value);
  state.counters["nodes"] = static_cast<double>(d.node_count());
}
BENCHMARK(BM_MaPairing)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
