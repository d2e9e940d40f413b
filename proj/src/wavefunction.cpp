#include "kgh/wavefunction.hpp"

#include "kgh/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kgh {

RadialWavefunction make_radial_wavefunction(const PotentialParams& p, const EnergyLevel& level) {
  const double m = p.m0();
  if (!(std::abs(level.energy) < m)) throw DomainError("bound state needs |E| < m0");
  const DerivedParams d = derived_params(p, level.state, level.energy);
  const double q = p.q();

  RadialWavefunction w{p, level.state, level, 0, 0, 0, 0};
  w.decay = std::sqrt(m * m - level.energy * level.energy);
  w.eps = 2.0 * w.decay / p.alpha();
  w.a_over_q = d.a / q;
  w.delta_exp = (q + d.a) / (2.0 * q);
  w.experimental = q < 0.0;
  (void)JacobiParams(level.state.n, w.eps, w.a_over_q);
  return w;
}

double RadialWavefunction::domain_start() const {
  return potential.q() > 0.0 ? potential.pole_radius() : 0.0;
}

double reduced_eval(const RadialWavefunction& w, double r) {
  const PotentialParams& p = w.potential;
  const double start = w.domain_start();
  if (!(r > start)) throw DomainError("radius outside the eigenfunction's domain");
  const double al = p.alpha();
  const double q = p.q();
  double base;
  double qe; // q e^{-alpha r}
  if (q > 0.0) {
    const double x = r - start;
    base = -std::expm1(-al * x);
    qe = std::exp(-al * x);
  } else {
    qe = q * std::exp(-al * r);
    base = 1.0 - qe;
  }
  const JacobiParams jp(w.state.n, w.eps, w.a_over_q);
  return w.norm * std::exp(-w.decay * r) * std::pow(base, w.delta_exp) *
         jacobi(jp, 1.0 - 2.0 * qe);
}

double radial_eval(const RadialWavefunction& w, double r) {
  if (!(r > 0.0)) throw DomainError("radius must be > 0");
  return std::pow(r, -0.5 * (w.state.dim - 1)) * reduced_eval(w, r);
}

double radial_cutoff(const RadialWavefunction& w) {
  return w.domain_start() + 20.0 / w.potential.alpha() + 25.0 / w.decay;
}

namespace {

std::vector<double> radial_breaks(const RadialWavefunction& w, double cutoff) {
  const double start = w.domain_start();
  const double unit = 1.0 / w.potential.alpha();
  std::vector<double> b{start};
  for (double x : {1e-6, 1e-4, 1e-2, 0.1, 0.5, 1.0}) b.push_back(start + x * unit);
  double x = 2.0 * unit;
  while (start + x < cutoff) {
    b.push_back(start + x);
    x *= 2.0;
  }
  b.erase(std::remove_if(b.begin() + 1, b.end(), [&](double v) { return v >= cutoff; }), b.end());
  b.push_back(cutoff);
  return b;
}

} // namespace

double radial_norm_integral(const RadialWavefunction& w, quad::Rule rule, double cutoff_scale) {
  const double start = w.domain_start();
  const double cutoff = start + cutoff_scale * (radial_cutoff(w) - start);
  const std::vector<double> breaks = radial_breaks(w, cutoff);
  auto g2 = [&](double r) {
    if (r <= start) return 0.0;
    const double g = reduced_eval(w, r);
    return g * g;
  };
  return quad::integrate_piecewise(g2, breaks, rule, 1e-11).value;
}

double radial_normalize(const RadialWavefunction& w, quad::Rule rule) {
  RadialWavefunction unit = w;
  unit.norm = 1.0;
  const double integral = radial_norm_integral(unit, rule);
  if (!(integral > 0.0)) throw QuadratureFailure("norm integral is not positive");
  return 1.0 / std::sqrt(integral);
}

RadialWavefunction normalized(RadialWavefunction w) {
  w.norm = radial_normalize(w);
  return w;
}

std::vector<double> node_grid(const RadialWavefunction& w, std::size_t points) {
  const double start = w.domain_start();
  const double al = w.potential.alpha();
  std::vector<double> out(points);
  const double lo = std::log(1e-4);
  const double hi = std::log(40.0);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
    out[i] = start + std::exp(lo + t * (hi - lo)) / al;
  }
  return out;
}

int node_count(const RadialWavefunction& w, std::span<const double> grid) {
  std::vector<double> v;
  v.reserve(grid.size());
  for (double r : grid) v.push_back(reduced_eval(w, r));
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  const double floor = 1e-14 * peak;
  int nodes = 0;
  int last_sign = 0;
  for (double x : v) {
    if (std::abs(x) <= floor) continue;
    const int sign = x > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++nodes;
    last_sign = sign;
  }
  return nodes;
}

int node_count(const RadialWavefunction& w) { return node_count(w, node_grid(w)); }

namespace {

void check_pair(int j, int lj, int lj_minus_1) {
  if (j < 2) throw InvalidQuantumNumbers("polar axis index must be >= 2");
  if (lj_minus_1 < 0) throw InvalidQuantumNumbers("angular quantum numbers must be >= 0");
  if (lj < lj_minus_1) throw InvalidQuantumNumbers("l_j must be >= l_{j-1}");
}

double angular_shape(int j, int lj, int lj_minus_1, double theta) {
  const double c = lj_minus_1 + 0.5 * (j - 2);
  const JacobiParams jp(lj - lj_minus_1, c, c);
  return std::pow(std::sin(theta), lj_minus_1) * jacobi(jp, std::cos(theta));
}

} // namespace

double angular_norm(int j, int lj, int lj_minus_1) {
  check_pair(j, lj, lj_minus_1);
  auto f = [&](double t) {
    const double h = angular_shape(j, lj, lj_minus_1, t);
    return h * h * std::pow(std::sin(t), j - 1);
  };
  const double integral = quad::gauss_kronrod(f, 0.0, std::numbers::pi, 1e-13).value;
  return 1.0 / std::sqrt(integral);
}

double angular_factor(int j, int lj, int lj_minus_1, double theta) {
  return angular_norm(j, lj, lj_minus_1) * angular_shape(j, lj, lj_minus_1, theta);
}

double angular_factor_last(int dim, int l, int l_dm2, double theta) {
  if (dim < 3) throw InvalidQuantumNumbers("a polar factor needs D >= 3");
  return angular_factor(dim - 1, l, l_dm2, theta);
}

double angular_norm_printed(int j, int lj, int lj_minus_1) {
  check_pair(j, lj, lj_minus_1);
  const double nj = lj - lj_minus_1;
  return std::sqrt((2.0 * lj + j - 1.0) * std::tgamma(nj + 1.0) /
                   (2.0 * std::tgamma(lj + lj_minus_1 + j - 2.0)));
}

double angular_norm_last_printed(int dim, int l, int l_dm2) {
  check_pair(dim - 1, l, l_dm2);
  const double n = l - l_dm2;
  const double mp = l_dm2 + 0.5 * (dim - 3);
  return std::sqrt((2.0 * n + 2.0 * mp + 1.0) * std::tgamma(n + 1.0) /
                   (2.0 * std::tgamma(n + 2.0 * mp)));
}

std::complex<double> azimuthal(int l1, double theta1, int sign) {
  if (l1 < 0) throw InvalidQuantumNumbers("l1 must be >= 0");
  const double phase = (sign >= 0 ? 1.0 : -1.0) * l1 * theta1;
  return std::polar(1.0 / std::sqrt(2.0 * std::numbers::pi), phase);
}

AngularState make_angular_state(int dim, int l, std::vector<int> chain) {
  if (dim < 1) throw InvalidQuantumNumbers("dimension must be >= 1");
  if (l < 0) throw InvalidQuantumNumbers("l must be >= 0");
  const std::size_t expected = dim >= 3 ? static_cast<std::size_t>(dim - 2) : 0;
  if (chain.size() != expected)
    throw InvalidQuantumNumbers("need " + std::to_string(expected) + " intermediate quantum numbers");
  if (dim == 1 && l != 0) throw InvalidQuantumNumbers("D = 1 has no orbital motion");

  AngularState a{dim, l, std::move(chain), {}};
  for (int j = 2; j <= dim - 1; ++j) {
    const int lj = j == dim - 1 ? l : a.chain[j - 1];
    const int lprev = a.chain[j - 2];
    a.norms.push_back(angular_norm(j, lj, lprev));
  }
  return a;
}

std::complex<double> angular_value(const AngularState& a, std::span<const double> angles,
                                   int sign) {
  if (a.dim == 1) return 1.0;
  if (angles.size() != static_cast<std::size_t>(a.dim - 1))
    throw InvalidParams("need D - 1 angles");
  const int l1 = a.dim == 2 ? a.l : a.chain[0];
  std::complex<double> v = azimuthal(l1, angles[0], sign);
  for (int j = 2; j <= a.dim - 1; ++j) {
    const int lj = j == a.dim - 1 ? a.l : a.chain[j - 1];
    const int lprev = a.chain[j - 2];
    v *= a.norms[j - 2] * angular_shape(j, lj, lprev, angles[j - 1]);
  }
  return v;
}

std::complex<double> total_wavefunction(const RadialWavefunction& w, const AngularState& a,
                                        std::span<const double> angles, double r, int sign) {
  if (w.potential.q() != 1.0) throw InvalidParams("total wavefunction is defined for q = 1");
  if (a.dim != w.state.dim || a.l != w.state.l)
    throw InvalidQuantumNumbers("angular state does not match the radial state");
  return radial_eval(w, r) * angular_value(a, angles, sign);
}

} // namespace kgh
