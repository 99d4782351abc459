#include <benchmark/benchmark.h>

#include "gztower/classical.hpp"
#include "gztower/orbit.hpp"
#include "gztower/quantum.hpp"
#include "gztower/tower.hpp"

using namespace gztower;

namespace {

void BM_ExactBracketOfMinors(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PoissonPoly a = char_minor(n, MatrixSide::U, n - 1, false);
  const PoissonPoly b = char_minor(n, MatrixSide::UTilde, n - 1, false);
  for (auto _ : state) benchmark::DoNotOptimize(bracket(a, b));
}
BENCHMARK(BM_ExactBracketOfMinors)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);

void BM_VerifyGzFamily(benchmark::State& state) {
  const CommutingFamily fam = build_family({FamilyKind::GzPrincipal, static_cast<int>(state.range(0)), Side::Both, {}});
  for (auto _ : state) benchmark::DoNotOptimize(verify_commutes(fam));
}
BENCHMARK(BM_VerifyGzFamily)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_NormalOrderedProduct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const NCPoly a = qdet(n, Copy::L, n - 1).lambda_coefficients().front();
  const NCPoly b = qdet(n, Copy::L, n).lambda_coefficients().front();
  for (auto _ : state) benchmark::DoNotOptimize(nc_mul(a, b));
}
BENCHMARK(BM_NormalOrderedProduct)->DenseRange(2, 3)->Unit(benchmark::kMicrosecond);

void BM_QuantumDeterminant(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qdet(3, Copy::L, k));
}
BENCHMARK(BM_QuantumDeterminant)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

void BM_GzForwardChart(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<cplx> spectrum;
  for (int k = 1; k <= n; ++k) spectrum.emplace_back(k, 0.0);
  const OrbitPoint pt = sample_orbit(spectrum, 7);
  for (auto _ : state) benchmark::DoNotOptimize(gz_forward(pt));
}
BENCHMARK(BM_GzForwardChart)->DenseRange(2, 6)->Unit(benchmark::kMicrosecond);

void BM_BuildTower(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<cplx> spectrum;
  for (int k = 1; k <= n; ++k) spectrum.emplace_back(k, 0.0);
  const OrbitPoint pt = sample_orbit(spectrum, 7);
  for (auto _ : state) benchmark::DoNotOptimize(build_tower(pt.u));
}
BENCHMARK(BM_BuildTower)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
