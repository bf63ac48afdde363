#include <benchmark/benchmark.h>

#include <vector>

#include "fdnoma/channel_sampler.hpp"
#include "fdnoma/monte_carlo.hpp"
#include "fdnoma/numerics.hpp"
#include "fdnoma/secrecy_analysis.hpp"
#include "fdnoma/ssr_optimizer.hpp"

using namespace fdnoma;

namespace {

SystemParams fig2_point() { return make_params(30.0, -10.0, 0.2, 0.14, Topology{}); }

void BM_ExpIntegralE1(benchmark::State& state) {
  const double z = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(numerics::exp_integral_e1(z));
}
BENCHMARK(BM_ExpIntegralE1)->Arg(1)->Arg(50)->Arg(500)->Arg(5000);

void BM_CapacityD1(benchmark::State& state) {
  const RateParams rp = make_rate_params(fig2_point());
  for (auto _ : state) benchmark::DoNotOptimize(ergodic_capacity_d1(rp));
}
BENCHMARK(BM_CapacityD1);

void BM_CapacityD2(benchmark::State& state) {
  const SystemParams p = fig2_point();
  const RateParams rp = make_rate_params(p);
  for (auto _ : state) benchmark::DoNotOptimize(ergodic_capacity_d2(rp, p));
}
BENCHMARK(BM_CapacityD2);

void BM_Analyze(benchmark::State& state) {
  const SystemParams p = fig2_point();
  for (auto _ : state) benchmark::DoNotOptimize(analyze(p).sec_lb);
}
BENCHMARK(BM_Analyze);

void BM_MonteCarloBatch(benchmark::State& state) {
  const SystemParams p = fig2_point();
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_ergodic_terms(p, n, 1).c_d1.mean);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_MonteCarloBatch)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

void BM_ScaOptimize(benchmark::State& state) {
  const SystemParams p = make_params(30.0, -10.0, 0.2, 0.2, Topology{});
  std::vector<DcCoefficients> blocks;
  for (std::uint64_t i = 0; i < 64; ++i) {
    blocks.push_back(dc_coefficients(p.rho, p.rho_si, sample_realization(p.profile, 3, i)));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto starts = random_starts(3, i, kDefaultRandomStarts);
    benchmark::DoNotOptimize(sca_optimize(blocks[i % blocks.size()], starts).best_ssr);
    ++i;
  }
}
BENCHMARK(BM_ScaOptimize)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
