#include <benchmark/benchmark.h>

#include <random>

#include "fbic/alamouti.hpp"
#include "fbic/egc.hpp"
#include "fbic/gaussian_bounds.hpp"
#include "fbic/kramer.hpp"
#include "fbic/ldm.hpp"

using namespace fbic;

static void BM_OuterBound(benchmark::State& state) {
  const ChannelParams p(1e3, 1e2);
  for (auto _ : state) benchmark::DoNotOptimize(gauss::outer_bound(p));
}
BENCHMARK(BM_OuterBound);

static void BM_GapGrid(benchmark::State& state) {
  for (auto _ : state) {
    for (int s = -10; s <= 70; s += 5) {
      for (int i = -10; i <= 70; i += 5) benchmark::DoNotOptimize(gauss::gap_certificate(ChannelParams::from_db(s, i)));
    }
  }
}
BENCHMARK(BM_GapGrid)->Unit(benchmark::kMillisecond);

static void BM_RhoStar(benchmark::State& state) {
  const ChannelParams p(1e10, 1e20);
  for (auto _ : state) benchmark::DoNotOptimize(kramer::rho_star(p));
}
BENCHMARK(BM_RhoStar);

static void BM_Protocol(benchmark::State& state) {
  const DetParams p(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const int len = ldm::message_length(p);
  std::mt19937_64 gen(1);
  ldm::BitVec w1(static_cast<std::size_t>(len)), w2(static_cast<std::size_t>(len));
  for (auto& b : w1) b = gen() & 1U;
  for (auto& b : w2) b = gen() & 1U;
  for (auto _ : state) benchmark::DoNotOptimize(ldm::run_two_stage_protocol(p, w1, w2));
}
BENCHMARK(BM_Protocol)->Args({8, 3})->Args({8, 8})->Args({3, 8})->Args({32, 20});

static void BM_EgcObjective(benchmark::State& state) {
  const auto spec = egc::ldm_to_egc(DetParams(2, 1));
  egc::CondDistU d;
  d.u_size = 3;
  d.p_u = {0.2, 0.3, 0.5};
  d.p_x1_given_u.assign(12, 0.25);
  d.p_x2_given_u.assign(12, 0.25);
  for (auto _ : state) benchmark::DoNotOptimize(egc::egc_objective(spec, d));
}
BENCHMARK(BM_EgcObjective);

static void BM_EgcSearch(benchmark::State& state) {
  const auto spec = egc::ldm_to_egc(DetParams(1, 1));
  egc::SearchConfig cfg;
  cfg.restarts = 10;
  for (auto _ : state) benchmark::DoNotOptimize(egc::egc_capacity_search(spec, cfg));
}
BENCHMARK(BM_EgcSearch)->Unit(benchmark::kMillisecond);

static void BM_MonteCarloWeak(benchmark::State& state) {
  alamouti::McConfig cfg;
  cfg.params = ChannelParams(100, 10);
  cfg.samples = static_cast<std::size_t>(state.range(0));
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(alamouti::simulate_weak_combining(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloWeak)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
