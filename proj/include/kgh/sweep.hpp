#pragma once

#include "kgh/execution.hpp"
#include "kgh/spectrum.hpp"

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

namespace kgh {

// Calls f(i) for i in [0, n). With Execution::parallel the indices are
// distributed over OpenMP threads; the first exception thrown by any call is
// rethrown on the calling thread after the loop.
template <class F>
void for_each_index(std::size_t n, Execution exec, F&& f) {
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr first;
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < count; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(kgh_for_each_index)
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

std::vector<double> linspace(double lo, double hi, std::size_t n);

// energy_residual over a list of energies. Entries where the residual is
// undefined (|E| > m0) are NaN. Throws NonRealA / DegenerateLevel, which do not
// depend on E.
std::vector<double> residual_grid(const PotentialParams& p, const QuantumState& s,
                                  std::span<const double> energies, DeltaBranch branch,
                                  Execution exec);

// Same as residual_grid for the right-hand side alone.
std::vector<double> rhs_grid(const PotentialParams& p, const QuantumState& s,
                             std::span<const double> energies, DeltaBranch branch,
                             Execution exec);

struct LevelCount {
  PotentialParams params;
  QuantumState state;
  std::size_t count = 0;
};

// solve_levels over many parameter sets; each task runs its scan serially.
std::vector<LevelCount> count_levels(std::span<const PotentialParams> params,
                                     std::span<const QuantumState> states,
                                     const SolveOptions& opts, Execution exec);

} // namespace kgh
