#pragma once

#include "kgh/jacobi.hpp"
#include "kgh/quadrature.hpp"
#include "kgh/potential.hpp"
#include "kgh/spectrum.hpp"

#include <complex>
#include <span>
#include <vector>

namespace kgh {

// Closed-form radial eigenfunction
//   g(r) = r^{(D-1)/2} R(r)
//        = N e^{-k r} (1 - q e^{-alpha r})^{(q+a)/(2q)} P_n^{(2k/alpha, a/q)}(1 - 2q e^{-alpha r}),
// k = sqrt(m0^2 - E^2). For q > 0 it vanishes at r = ln(q)/alpha, where the
// base factor does, so its natural domain is r > domain_start().
struct RadialWavefunction {
  PotentialParams potential;
  QuantumState state;
  EnergyLevel level;
  double decay;     // sqrt(m0^2 - E^2)
  double eps;       // 2 r0 sqrt(m0^2 - E^2), first Jacobi parameter
  double a_over_q;  // second Jacobi parameter
  double delta_exp; // (q + a)/(2q)
  double norm = 1.0;
  // q < 0: the Jacobi argument leaves [-1, 1].
  bool experimental = false;

  double domain_start() const;
};

// Throws NonRealA, DomainError (|E| >= m0), InvalidParams (Jacobi parameters).
RadialWavefunction make_radial_wavefunction(const PotentialParams& p, const EnergyLevel& level);

// g(r) with the current norm; throws DomainError for r <= domain_start().
double reduced_eval(const RadialWavefunction& w, double r);

// R(r) = r^{-(D-1)/2} g(r); needs r > 0 as well.
double radial_eval(const RadialWavefunction& w, double r);

// Upper integration limit where the envelope has fallen below 1e-16 of its peak.
double radial_cutoff(const RadialWavefunction& w);

// Integral of g^2 over (domain_start, cutoff) for the current norm.
double radial_norm_integral(const RadialWavefunction& w, quad::Rule rule = quad::Rule::gauss_kronrod,
                            double cutoff_scale = 1.0);

// N such that the integral of g^2 is one. Throws QuadratureFailure.
double radial_normalize(const RadialWavefunction& w,
                        quad::Rule rule = quad::Rule::gauss_kronrod);

// Copy of w with norm set by radial_normalize.
RadialWavefunction normalized(RadialWavefunction w);

// Log-spaced points with alpha (r - r_start) in [1e-4, 40].
std::vector<double> node_grid(const RadialWavefunction& w, std::size_t points = 10000);

// Strict sign changes of R on the grid, ignoring points below 1e-14 of the peak.
int node_count(const RadialWavefunction& w, std::span<const double> grid);
int node_count(const RadialWavefunction& w);

// Angular factors on the hypersphere. l_chain holds l_1, ..., l_{D-2} with
// l_{D-1} = l; a factor for axis j depends on l_j and l_{j-1}.
// H_j(theta) = N (sin theta)^{l_{j-1}} P_{l_j - l_{j-1}}^{(c, c)}(cos theta),
// c = l_{j-1} + (j-2)/2, normalised under (sin theta)^{j-1} d theta.
double angular_norm(int j, int lj, int lj_minus_1);
double angular_factor(int j, int lj, int lj_minus_1, double theta);
double angular_factor_last(int dim, int l, int l_dm2, double theta);

// The printed Gamma-function normalisations, kept for comparison only.
double angular_norm_printed(int j, int lj, int lj_minus_1);
double angular_norm_last_printed(int dim, int l, int l_dm2);

std::complex<double> azimuthal(int l1, double theta1, int sign = +1);

struct AngularState {
  int dim = 3;
  int l = 0;
  std::vector<int> chain; // l_1 .. l_{D-2}
  std::vector<double> norms; // one per polar axis j = 2 .. D-1
};

// Validates l >= l_{D-2} >= ... >= l_1 >= 0. Throws InvalidQuantumNumbers.
AngularState make_angular_state(int dim, int l, std::vector<int> chain);

// angles = theta_1 (azimuthal), theta_2, ..., theta_{D-1}.
std::complex<double> angular_value(const AngularState& a, std::span<const double> angles,
                                   int sign = +1);

// Product of the radial function and all angular factors; needs q = 1.
std::complex<double> total_wavefunction(const RadialWavefunction& w, const AngularState& a,
                                        std::span<const double> angles, double r, int sign = +1);

} // namespace kgh
