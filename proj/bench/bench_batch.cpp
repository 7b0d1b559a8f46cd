// Serial reference vs OpenMP batch solve on the default scenario.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "pinch/batch.hpp"
#include "pinch/sweep.hpp"

namespace {

struct Fixture {
  pinch::ScenarioConfig cfg;
  pinch::Catalog catalog;
  pinch::System system;
  std::vector<pinch::RequestState> states;
  std::vector<pinch::SolveTask> tasks;

  explicit Fixture(pinch::SchemeId scheme, std::size_t n_states) {
    cfg.sampling_mode = pinch::SamplingMode::monte_carlo;
    cfg.samples = n_states;
    catalog = pinch::frozen_catalog(cfg);
    system = pinch::make_system(cfg, 0);
    states = pinch::request_states(cfg, 0).states;
    for (const auto& s : states) tasks.push_back({scheme, &s, &catalog, &system});
  }
};

void BM_Serial(benchmark::State& st) {
  Fixture f(static_cast<pinch::SchemeId>(st.range(0)), 32);
  for (auto _ : st) benchmark::DoNotOptimize(pinch::solve_batch_serial(f.tasks, f.cfg.solver));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(f.tasks.size()));
}

void BM_Parallel(benchmark::State& st) {
  Fixture f(static_cast<pinch::SchemeId>(st.range(0)), 32);
  for (auto _ : st) benchmark::DoNotOptimize(pinch::solve_batch_parallel(f.tasks, f.cfg.solver));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(f.tasks.size()));
  st.counters["threads"] = omp_get_max_threads();
}

}  // namespace

BENCHMARK(BM_Serial)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
