#pragma once

#include "kgh/execution.hpp"
#include "kgh/potential.hpp"
#include "kgh/spectrum.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kgh {

// Shooting solver for g'' = W(r; E) g,
//   W = (m0 + S)^2 - (E - V)^2 + centrifugal,
// written on x = r - r_start with g(0) = 0. r_start is ln(q)/alpha for q > 0
// (where 1 - q e^{-alpha r} vanishes) and 0 for q < 0; for q = 1 it is the origin.
// The grid is uniform in ln x and carries u = x^{-1/2} g, which obeys
// u'' = (x^2 W + 1/4) u.
enum class CentrifugalMode { exact, approx };

struct RadialGrid {
  double r_start = 0;   // r of x = 0
  double x_min = 0;
  double x_max = 0;
  std::size_t n_points = 0;
  double spacing = 0;   // step in ln x
  std::vector<double> x;
  std::vector<double> shape;       // e^{-alpha r}/(1 - q e^{-alpha r})
  std::vector<double> centrifugal; // chosen centrifugal term at each point
  double indicial = 0;             // g ~ x^indicial at the origin

  double r(std::size_t i) const { return r_start + x[i]; }
};

// x_max = max(40/decay, 60/alpha); x_min = 1e-8/max(alpha, m0).
// Throws DomainError where the chosen centrifugal term is singular inside the
// domain or the origin is a fall-to-centre point, NonRealA likewise.
RadialGrid make_grid(const PotentialParams& p, const CentrifugalSpec& c, CentrifugalMode mode,
                     double decay, double step = 5e-4);

struct Integration {
  double mismatch;  // log-derivative jump at the matching point (in ln x)
  double wronskian; // sign changes exactly at eigenvalues
  std::size_t match_index;
  int nodes;
};

// match: grid index to match at; chosen from W when not given.
Integration integrate_radial(const PotentialParams& p, double energy, const RadialGrid& grid,
                             std::optional<std::size_t> match = std::nullopt);

struct ShootingResult {
  double energy = 0;
  double mismatch = 0;
  int iterations = 0;
  int nodes = 0;
  bool converged = false;
};

struct OracleOptions {
  double step = 5e-4;
  int scan_points = 801;
  double energy_tolerance = 1e-10;   // times m0
  double mismatch_tolerance = 1e-8;
  Execution execution = Execution::parallel;
};

// Bisection on the Wronskian over [lo, hi]. Throws NoSignChange.
ShootingResult eigensearch(const PotentialParams& p, const CentrifugalSpec& c,
                           CentrifugalMode mode, double lo, double hi,
                           const OracleOptions& opts = {});

// Every eigenvalue in (-m0, m0), ascending.
std::vector<ShootingResult> oracle_levels(const PotentialParams& p, const CentrifugalSpec& c,
                                          CentrifugalMode mode, const OracleOptions& opts = {});

// Eigenvalue closest to guess inside guess +- half_width, if any.
std::optional<ShootingResult> nearest_level(const PotentialParams& p, const CentrifugalSpec& c,
                                            CentrifugalMode mode, double guess,
                                            double half_width, const OracleOptions& opts = {});

struct ReportRow {
  QuantumState state;
  double e_closed = 0;
  double residual = 0;
  std::optional<double> e_approx;
  std::optional<double> e_exact;
  double delta_approx = 0; // |e_approx - e_closed|, NaN if no oracle level
  double delta_exact = 0;
  bool exact_supported = true;
  bool outside_validity = false; // q != 1 with a nonzero centrifugal factor
  std::string note;
};

std::vector<ReportRow> approximation_report(const PotentialParams& p, const CentrifugalSpec& c,
                                            std::span<const EnergyLevel> levels,
                                            const OracleOptions& opts = {});

} // namespace kgh
