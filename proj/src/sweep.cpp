#include "kgh/sweep.hpp"

#include "kgh/errors.hpp"

#include <cmath>
#include <limits>

namespace kgh {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 0) return out;
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
  out[n - 1] = hi;
  return out;
}

namespace {

// delta does not depend on E, so get the E-independent failures out of the
// way before entering a parallel region.
void precheck(const PotentialParams& p, const QuantumState& s, DeltaBranch branch) {
  (void)energy_rhs(p, s, 0.0, branch);
}

} // namespace

std::vector<double> residual_grid(const PotentialParams& p, const QuantumState& s,
                                  std::span<const double> energies, DeltaBranch branch,
                                  Execution exec) {
  precheck(p, s, branch);
  std::vector<double> out(energies.size());
  const long n = static_cast<long>(energies.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) out[i] = energy_residual(p, s, energies[i], branch);
  } else {
    for (long i = 0; i < n; ++i) out[i] = energy_residual(p, s, energies[i], branch);
  }
  return out;
}

std::vector<double> rhs_grid(const PotentialParams& p, const QuantumState& s,
                             std::span<const double> energies, DeltaBranch branch,
                             Execution exec) {
  precheck(p, s, branch);
  std::vector<double> out(energies.size());
  const long n = static_cast<long>(energies.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) out[i] = energy_rhs(p, s, energies[i], branch);
  } else {
    for (long i = 0; i < n; ++i) out[i] = energy_rhs(p, s, energies[i], branch);
  }
  return out;
}

std::vector<LevelCount> count_levels(std::span<const PotentialParams> params,
                                     std::span<const QuantumState> states,
                                     const SolveOptions& opts, Execution exec) {
  if (params.size() != states.size())
    throw InvalidParams("count_levels needs one state per parameter set");
  std::vector<LevelCount> out;
  out.reserve(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) out.push_back({params[i], states[i], 0});

  SolveOptions inner = opts;
  inner.execution = Execution::serial;
  for_each_index(params.size(), exec, [&](std::size_t i) {
    out[i].count = solve_levels(params[i], states[i], inner).size();
  });
  return out;
}

} // namespace kgh
