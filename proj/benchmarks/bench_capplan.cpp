#include <benchmark/benchmark.h>

#include "capplan/engset.hpp"
#include "capplan/montecarlo.hpp"
#include "capplan/planner.hpp"
#include "capplan/sweep.hpp"
#include "capplan/timeout.hpp"

namespace {

using namespace capplan;

ChannelParams base_channel() {
  ChannelParams ch;
  ch.capacity_base = 10e6;
  ch.capacity_extra = 0.0;
  ch.packet_service_factor = 1e-4;
  ch.background_rate = 900.0;
  ch.probe_rate = 1.0 / 120.0;
  ch.timeout_threshold = 0.01;
  return ch;
}

WorkloadParams base_workload() {
  WorkloadParams w;
  w.mu = 1.0 / 28800.0;
  w.lambda = w.mu;  // rho = 1
  return w;
}

void BM_EngsetRecursive(benchmark::State& state) {
  const int licenses = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(blocking_recursive(licenses, 2 * licenses, 1.0));
}
BENCHMARK(BM_EngsetRecursive)->Arg(15)->Arg(60)->Arg(500);

void BM_EngsetDirect(benchmark::State& state) {
  const int licenses = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(blocking_direct(licenses, 2 * licenses, 1.0));
}
BENCHMARK(BM_EngsetDirect)->Arg(15)->Arg(30);

void BM_TimeoutProbability(benchmark::State& state) {
  const ChannelParams ch = base_channel();
  const WorkloadParams w = base_workload();
  double extra = 0.0;
  for (auto _ : state) {
    ChannelParams c = ch;
    c.capacity_extra = extra;
    extra = extra < 20e6 ? extra + 1e3 : 0.0;
    benchmark::DoNotOptimize(timeout_probability(c, w.mu));
  }
}
BENCHMARK(BM_TimeoutProbability);

void BM_CapacityForTimeout(benchmark::State& state) {
  const ChannelParams ch = base_channel();
  const WorkloadParams w = base_workload();
  for (auto _ : state)
    benchmark::DoNotOptimize(capacity_for_timeout(1e-3, w.mu, ch.probe_rate,
                                                  ch.timeout_threshold,
                                                  ch.background_rate,
                                                  ch.packet_service_factor));
}
BENCHMARK(BM_CapacityForTimeout);

void BM_OptimizeCentralized(benchmark::State& state) {
  const ChannelParams ch = base_channel();
  const WorkloadParams w = base_workload();
  CostModel cost{1.0, 2.0, 1};
  SlaTarget sla{0.95};
  for (auto _ : state)
    benchmark::DoNotOptimize(optimize_centralized(w, ch, 30, cost, sla));
}
BENCHMARK(BM_OptimizeCentralized);

void BM_OptimizeDistributed(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  const WorkloadParams w = base_workload();
  std::vector<int> populations(sites, 15);
  CostModel cost{1.0, 2.0, 1};
  SlaTarget sla{0.95};
  for (auto _ : state)
    benchmark::DoNotOptimize(optimize_distributed(w, populations, cost, sla));
}
BENCHMARK(BM_OptimizeDistributed)->Arg(2)->Arg(6);

void BM_SimulateEngset(benchmark::State& state) {
  const WorkloadParams w = base_workload();
  SimConfig cfg;
  cfg.seed = 7;
  cfg.replications = 2;
  cfg.horizon = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(simulate_engset(20, 30, w, cfg));
  state.SetItemsProcessed(state.iterations() * cfg.replications *
                          static_cast<std::int64_t>(cfg.horizon));
}
BENCHMARK(BM_SimulateEngset)->Arg(20000);

void BM_SimulateTimeout(benchmark::State& state) {
  const ChannelParams ch = base_channel();
  const WorkloadParams w = base_workload();
  SimConfig cfg;
  cfg.seed = 7;
  cfg.replications = 2;
  cfg.horizon = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(simulate_timeout(ch, w.mu, cfg));
  state.SetItemsProcessed(state.iterations() * cfg.replications *
                          static_cast<std::int64_t>(cfg.horizon));
}
BENCHMARK(BM_SimulateTimeout)->Arg(20000);

void BM_SweepBlocking(benchmark::State& state) {
  SweepSpec spec;
  spec.kind = SweepKind::blocking_vs_licenses;
  RawConfig raw = RawConfig::from_text(
      "session_duration = 8 h\n"
      "rho = 1\n"
      "capacity_base = 10 Mbps\n"
      "packet_size = 1250 B\n"
      "background_rate = 900 pkt/s\n"
      "probe_interval = 120 s\n"
      "tau = 0.01 s\n"
      "sites = 15,15\n"
      "alpha = 1\n"
      "beta = 2\n"
      "sla = 0.95\n");
  spec.config = normalize(raw);
  spec.licenses_min = 1;
  spec.licenses_max = 30;
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(run_sweep(spec, threads));
}
BENCHMARK(BM_SweepBlocking)->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
