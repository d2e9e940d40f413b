#include "kgh/oracle.hpp"
#include "kgh/sweep.hpp"
#include "kgh/tables.hpp"

#include <benchmark/benchmark.h>

namespace {

kgh::Execution exec_of(const benchmark::State& st) {
  return st.range(0) == 0 ? kgh::Execution::serial : kgh::Execution::parallel;
}

void BM_ResidualGrid(benchmark::State& st) {
  const kgh::PotentialParams p(0.25, 0.1, 0.5, 1.0);
  const kgh::QuantumState s(0, 0, 3);
  const std::vector<double> energies = kgh::linspace(-0.999, 0.999, 1 << 18);
  for (auto _ : st) {
    auto r = kgh::residual_grid(p, s, energies, kgh::DeltaBranch::sign_rule, exec_of(st));
    benchmark::DoNotOptimize(r.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(energies.size()));
}

void BM_Table2(benchmark::State& st) {
  const kgh::TableSetup setup = kgh::table2_setup();
  for (auto _ : st) {
    auto cells = kgh::compute_table(setup, exec_of(st));
    benchmark::DoNotOptimize(cells.data());
    auto absent = kgh::table2_absence_checks(exec_of(st));
    benchmark::DoNotOptimize(absent.data());
  }
}

void BM_OracleScan(benchmark::State& st) {
  const kgh::PotentialParams p(0.1, 0.1, 0.1, 1.0);
  const kgh::CentrifugalSpec c(1, 0);
  kgh::OracleOptions opts;
  opts.execution = exec_of(st);
  opts.scan_points = 201;
  for (auto _ : st) {
    auto levels = kgh::oracle_levels(p, c, kgh::CentrifugalMode::approx, opts);
    benchmark::DoNotOptimize(levels.data());
  }
}

} // namespace

// Arg 0 is the serial reference, 1 the OpenMP kernel.
BENCHMARK(BM_ResidualGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Table2)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OracleScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
