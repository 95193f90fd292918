#include <benchmark/benchmark.h>

#include <random>
#include <utility>
#include <vector>

#include "valveflow/classification.hpp"
#include "valveflow/godunov.hpp"
#include "valveflow/valve.hpp"

using namespace valveflow;

namespace {

std::vector<State> random_states(int n, const GasParams& g) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lr(std::log(0.5), std::log(2.0)), nu(-0.5, 0.5);
  std::vector<State> out;
  for (int i = 0; i < n; ++i) out.push_back(State::from_mu_nu(lr(rng), nu(rng), g));
  return out;
}

void godunov_step(benchmark::State& st, Exec exec) {
  const int n = static_cast<int>(st.range(0));
  SimConfig cfg;
  cfg.valve = std::make_shared<ElectronicValve>(0.5);
  cfg.exec = exec;
  Grid1D grid = Grid1D::make(-1.0, 1.0, n, [](double) { return State(1.0, 0.0); });
  grid.cells = random_states(n, cfg.g);
  for (auto _ : st) benchmark::DoNotOptimize(step(grid, cfg, 1.0));
  st.SetItemsProcessed(st.iterations() * n);
}

void pair_sweep(benchmark::State& st, Exec exec) {
  const GasParams g(1.0);
  const auto states = random_states(2 * static_cast<int>(st.range(0)), g);
  std::vector<std::pair<State, State>> pairs;
  for (std::size_t i = 0; i + 1 < states.size(); i += 2) pairs.emplace_back(states[i], states[i + 1]);
  for (auto _ : st) benchmark::DoNotOptimize(classify_pairs(pairs, 0.5, g, exec));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(pairs.size()));
}

}  // namespace

BENCHMARK_CAPTURE(godunov_step, serial, Exec::Serial)->Arg(1000)->Arg(10000)->Arg(100000);
BENCHMARK_CAPTURE(godunov_step, parallel, Exec::Parallel)->Arg(1000)->Arg(10000)->Arg(100000);
BENCHMARK_CAPTURE(pair_sweep, serial, Exec::Serial)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(pair_sweep, parallel, Exec::Parallel)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
