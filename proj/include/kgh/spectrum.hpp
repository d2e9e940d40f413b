#pragma once

#include "kgh/execution.hpp"
#include "kgh/nu.hpp"
#include "kgh/potential.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kgh {

struct QuantumState {
  int n = 0;
  int l = 0;
  int dim = 3;

  QuantumState() = default;
  QuantumState(int n, int l, int dim);

  CentrifugalSpec centrifugal() const { return {dim, l}; }
};

// Which root of delta^2 - delta - gamma = beta2 enters the energy equation.
enum class DeltaBranch {
  sign_rule, // delta_+ for q > 0, delta_- for q < 0
  plus,       // (1 + a/q)/2 for either sign of q
  minus,      // (1 - a/q)/2
};

// Dimensionless symbols of the radial reduction at energy E.
struct DerivedParams {
  double eps;        // sqrt(m0^2 - E^2)/alpha
  double beta1;      // 2(m0 s0 + E v0)/(alpha^2 q)
  double beta2;      // (s0^2 - v0^2)/(alpha^2 q^2)
  double gamma;      // (D+2l-1)(D+2l-3)/(4q)
  double a_radicand; // q^2 + 4(s0^2 - v0^2)/alpha^2 + q (D+2l-1)(D+2l-3)
  double a;
  double delta;
  double kappa; // q alpha (2n+1) + alpha a
  double eta;   // (4(v0^2 - s0^2) + kappa^2 - 8 q m0 s0)/(4 v0^2 + kappa^2)
};

// Throws NonRealA, DomainError (|E| > m0).
DerivedParams derived_params(const PotentialParams& p, const QuantumState& s, double energy,
                             DeltaBranch branch = DeltaBranch::sign_rule);

double delta_value(const PotentialParams& p, const QuantumState& s,
                   DeltaBranch branch = DeltaBranch::sign_rule);

// Right-hand side of the transcendental energy equation
//   sqrt(m0^2 - E^2) = (2q(m0 s0 + E v0) + s0^2 - v0^2)/(2 q^2 alpha (n+delta))
//                      - alpha (n+delta)/2
double energy_rhs(const PotentialParams& p, const QuantumState& s, double energy,
                  DeltaBranch branch = DeltaBranch::sign_rule);

// LHS - RHS of the energy equation. Throws NonRealA, DegenerateLevel.
double energy_residual(const PotentialParams& p, const QuantumState& s, double energy,
                       DeltaBranch branch = DeltaBranch::sign_rule);

// The radial equation in s = q e^{-alpha r} as a hypergeometric-type problem.
nu::NUProblem radial_nu_problem(const DerivedParams& d);

enum class Branch { particle, antiparticle };

struct EnergyLevel {
  double energy = 0;
  Branch branch = Branch::particle;
  double residual = 0;
  bool verified = false; // |residual| <= tolerance * m0
  QuantumState state;
  int kappa_sign = +1; // sign of the inner root in kappa
};

inline constexpr double kResidualTolerance = 1e-9;

struct SolveOptions {
  int grid_points = 4096;
  DeltaBranch branch = DeltaBranch::sign_rule;
  Execution execution = Execution::parallel;
  double residual_tolerance = kResidualTolerance;
};

// All roots of the energy equation in (-m0, m0), ascending.
std::vector<EnergyLevel> solve_levels(const PotentialParams& p, const QuantumState& s,
                                      const SolveOptions& opts = {});

// How closed-form candidates are returned.
enum class Acceptance {
  // Only candidates that satisfy the unsquared energy equation.
  residual_verified,
  // The printed formula (inner "+" root, both outer signs), each tagged with
  // its residual; nothing is discarded.
  formula,
};

// General explicit spectrum. Throws ConstraintViolated naming the inequality.
std::vector<EnergyLevel> energy_explicit(const PotentialParams& p, const QuantumState& s,
                                         Acceptance acc = Acceptance::residual_verified,
                                         double tol = kResidualTolerance);

// s0 = 0 specialisation.
std::vector<EnergyLevel> energy_pure_vector(const PotentialParams& p, const QuantumState& s,
                                            Acceptance acc = Acceptance::residual_verified,
                                            double tol = kResidualTolerance);

// v0 = 0 specialisation; levels come in +-E pairs.
std::vector<EnergyLevel> energy_pure_scalar(const PotentialParams& p, const QuantumState& s,
                                            Acceptance acc = Acceptance::residual_verified,
                                            double tol = kResidualTolerance);

// One-dimensional s-wave form (D = 1, l = 0, any q).
std::vector<EnergyLevel> energy_swave_1d(const PotentialParams& p, int n,
                                         Acceptance acc = Acceptance::residual_verified,
                                         double tol = kResidualTolerance);

// D = 3, q = 1 mixed coupling, any l.
std::vector<EnergyLevel> energy_3d(const PotentialParams& p, int n, int l,
                                   Acceptance acc = Acceptance::residual_verified,
                                   double tol = kResidualTolerance);

// D = 3, q = 1, s0 = 0.
std::vector<EnergyLevel> energy_3d_pure_vector(const PotentialParams& p, int n, int l,
                                               Acceptance acc = Acceptance::residual_verified,
                                               double tol = kResidualTolerance);

// D = 3, l = 0, any q; only the particle expression is printed for it.
std::vector<EnergyLevel> energy_3d_swave(const PotentialParams& p, int n,
                                         Acceptance acc = Acceptance::residual_verified,
                                         double tol = kResidualTolerance);

// s0 = v0, q = 1. Highest root of
//   sqrt(m0^2 - E^2) = r0 v0 (m0 + E)/(n + delta) - (n + delta)/(2 r0).
// Throws NoRoot.
EnergyLevel energy_equal_coupling(const PotentialParams& p, const QuantumState& s);

// delta = (1 + |D+2l-2|)/2 for the equal-coupling case.
double equal_coupling_delta(const QuantumState& s);

double nonrelativistic_limit(const PotentialParams& p, const QuantumState& s);

// E_NR + m0 + 4 m0 (v0 r0/(q (n+delta)))^4
double weak_coupling_energy(const PotentialParams& p, const QuantumState& s);

// Shifted Woods-Saxon well (q = -1; the q stored in p is ignored).
// Candidates are back-substituted with DeltaBranch::plus at q = -1.
std::vector<EnergyLevel> energy_woods_saxon(const PotentialParams& p, const QuantumState& s,
                                            Acceptance acc = Acceptance::residual_verified,
                                            double tol = kResidualTolerance);

std::vector<EnergyLevel> energy_woods_saxon_pure_vector(
    const PotentialParams& p, const QuantumState& s,
    Acceptance acc = Acceptance::residual_verified, double tol = kResidualTolerance);

struct LevelCapacity {
  std::optional<int> n_max; // nullopt: no level
  double bound;             // right-hand side of n <= bound (NaN if radicands < 0)
  bool existence_condition; // necessary condition for at least one level
};

// Pure-vector Hulthen bound on n.
LevelCapacity level_capacity(const PotentialParams& p, const CentrifugalSpec& c);

// Pure-vector Woods-Saxon bound on n.
LevelCapacity ws_level_capacity(const PotentialParams& p, const CentrifugalSpec& c);

std::string to_string(Branch b);

} // namespace kgh
