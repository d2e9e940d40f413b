#pragma once

#include <span>
#include <vector>

namespace kgh::nu {

// c0 + c1 s + c2 s^2
struct Quadratic {
  double c0 = 0, c1 = 0, c2 = 0;

  double operator()(double s) const { return c0 + s * (c1 + s * c2); }
  double slope_at(double s) const { return c1 + 2.0 * c2 * s; }
  double second_derivative() const { return 2.0 * c2; }
};

// d0 + d1 s
struct Linear {
  double d0 = 0, d1 = 0;

  double operator()(double s) const { return d0 + d1 * s; }
  double slope() const { return d1; }
};

// psi'' + (tau_tilde/sigma) psi' + (sigma_tilde/sigma^2) psi = 0
struct NUProblem {
  Quadratic sigma;
  Quadratic sigma_tilde;
  Linear tau_tilde;
};

struct NUBranch {
  double k = 0;
  Linear pi;
  Linear tau;       // tau_tilde + 2 pi
  double lambda = 0; // k + pi'
  // The k-discriminant was within tolerance of zero and clamped.
  bool degenerate_discriminant = false;
};

// Throws NoRealK when no real k makes the radicand a perfect square.
std::vector<NUBranch> candidate_branches(const NUProblem& p);

// Picks tau' < 0; ties go to the branch with nonnegative phi exponents, then
// to the most negative tau'. Throws NoPhysicalBranch.
NUBranch select_physical(const NUProblem& p, std::span<const NUBranch> branches);

// -n tau' - n(n-1)/2 sigma''
double lambda_ladder(const NUBranch& b, const Quadratic& sigma, int n);

enum class SigmaFamily {
  // sigma = c s (1 - s):   f(s) = s^first (1 - s)^second
  unit_interval,
  // sigma = c (1 - s^2):   f(s) = (1 - s)^first (1 + s)^second
  symmetric,
};

struct PowerPair {
  double first = 0, second = 0;
};

struct WeightAndPhi {
  SigmaFamily family;
  PowerPair rho;
  PowerPair phi;
};

// Exponents solving (sigma rho)' = tau rho and phi'/phi = pi/sigma.
// Throws UnsupportedSigma for any other sigma shape.
WeightAndPhi weight_and_phi(const NUBranch& b, const NUProblem& p);

// Discriminant of the quadratic under the root for a given k, relative to
// the size of its terms. Zero for a perfect square.
double relative_square_defect(const NUProblem& p, double k);

} // namespace kgh::nu
