#include "kgh/spectrum.hpp"

#include "kgh/errors.hpp"
#include "kgh/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kgh {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sq(double x) { return x * x; }

double a_radicand_of(const PotentialParams& p, const QuantumState& s) {
  const double q = p.q();
  const double f = static_cast<double>(s.centrifugal().factor());
  return q * q + 4.0 * (sq(p.s0()) - sq(p.v0())) / sq(p.alpha()) + q * f;
}

// Candidate energies before back-substitution.
struct Candidate {
  double energy;
  Branch branch;
  int kappa_sign;
};

std::vector<EnergyLevel> finish(const PotentialParams& residual_params, const QuantumState& s,
                                const std::vector<Candidate>& cands, Acceptance acc, double tol,
                                DeltaBranch branch) {
  std::vector<EnergyLevel> out;
  for (const Candidate& c : cands) {
    EnergyLevel lvl;
    lvl.energy = c.energy;
    lvl.branch = c.branch;
    lvl.kappa_sign = c.kappa_sign;
    lvl.state = s;
    try {
      lvl.residual = energy_residual(residual_params, s, c.energy, branch);
    } catch (const Error&) {
      lvl.residual = kNaN;
    }
    lvl.verified = std::abs(lvl.residual) <= tol * residual_params.m0();
    if (acc == Acceptance::formula || lvl.verified) out.push_back(lvl);
  }
  std::sort(out.begin(), out.end(),
            [](const EnergyLevel& a, const EnergyLevel& b) { return a.energy < b.energy; });
  return out;
}

// center +- kappa sqrt(inner); nothing when inner < 0.
bool push_pair(std::vector<Candidate>& out, double center, double kappa, double inner,
               int kappa_sign, bool both_signs = true) {
  if (!(inner >= 0.0)) return false;
  const double w = kappa * std::sqrt(inner);
  out.push_back({center + w, Branch::particle, kappa_sign});
  if (both_signs) out.push_back({center - w, Branch::antiparticle, kappa_sign});
  return true;
}

std::vector<int> kappa_signs(Acceptance acc) {
  if (acc == Acceptance::formula) return {+1};
  return {+1, -1};
}

void require_q(const PotentialParams& p, double q) {
  if (p.q() != q) throw InvalidParams("this form is only defined for q=" + std::to_string(q));
}

const char* const kInnerConstraint = "16 q^2 m0^2 >= eta^2 (4 v0^2 + kappa^2)";

} // namespace

QuantumState::QuantumState(int n, int l, int dim) : n(n), l(l), dim(dim) {
  if (n < 0) throw InvalidQuantumNumbers("n must be >= 0");
  if (l < 0) throw InvalidQuantumNumbers("l must be >= 0");
  if (dim < 1) throw InvalidQuantumNumbers("dimension must be >= 1");
}

double delta_value(const PotentialParams& p, const QuantumState& s, DeltaBranch branch) {
  const double rad = a_radicand_of(p, s);
  if (rad < 0.0) throw NonRealA(rad);
  const double ratio = std::sqrt(rad) / p.q();
  switch (branch) {
  case DeltaBranch::plus:
    return 0.5 * (1.0 + ratio);
  case DeltaBranch::minus:
    return 0.5 * (1.0 - ratio);
  case DeltaBranch::sign_rule:
    break;
  }
  return p.q() > 0.0 ? 0.5 * (1.0 + ratio) : 0.5 * (1.0 - ratio);
}

DerivedParams derived_params(const PotentialParams& p, const QuantumState& s, double energy,
                             DeltaBranch branch) {
  const double m = p.m0();
  if (!(std::abs(energy) <= m)) throw DomainError("|E| must not exceed m0");
  const double al = p.alpha();
  const double q = p.q();
  const double f = static_cast<double>(s.centrifugal().factor());

  DerivedParams d{};
  d.eps = std::sqrt(m * m - energy * energy) / al;
  d.beta1 = 2.0 * (m * p.s0() + energy * p.v0()) / (al * al * q);
  d.beta2 = (sq(p.s0()) - sq(p.v0())) / (al * al * q * q);
  d.gamma = f / (4.0 * q);
  d.a_radicand = a_radicand_of(p, s);
  if (d.a_radicand < 0.0) throw NonRealA(d.a_radicand);
  d.a = std::sqrt(d.a_radicand);
  d.delta = delta_value(p, s, branch);
  d.kappa = 2.0 * q * al * (s.n + d.delta);
  const double v2 = 4.0 * sq(p.v0());
  d.eta = (v2 - 4.0 * sq(p.s0()) + sq(d.kappa) - 8.0 * q * m * p.s0()) / (v2 + sq(d.kappa));
  return d;
}

double energy_rhs(const PotentialParams& p, const QuantumState& s, double energy,
                  DeltaBranch branch) {
  const double nd = s.n + delta_value(p, s, branch);
  if (std::abs(nd) < 1e-14) throw DegenerateLevel("n + delta vanishes");
  const double q = p.q();
  const double al = p.alpha();
  return (2.0 * q * (p.m0() * p.s0() + energy * p.v0()) + sq(p.s0()) - sq(p.v0())) /
             (2.0 * q * q * al * nd) -
         al * nd / 2.0;
}

double energy_residual(const PotentialParams& p, const QuantumState& s, double energy,
                       DeltaBranch branch) {
  const double m = p.m0();
  const double rhs = energy_rhs(p, s, energy, branch);
  if (!(std::abs(energy) <= m)) return kNaN;
  return std::sqrt(m * m - energy * energy) - rhs;
}

nu::NUProblem radial_nu_problem(const DerivedParams& d) {
  // s(1-s) psi'' + (1-s) psi' + [-eps^2 + (beta1 - gamma + 2 eps^2) s
  //   - (eps^2 + beta1 + beta2) s^2] psi / (s(1-s)) = 0
  nu::NUProblem p;
  p.sigma = {0.0, 1.0, -1.0};
  p.tau_tilde = {1.0, -1.0};
  const double e2 = d.eps * d.eps;
  p.sigma_tilde = {-e2, d.beta1 - d.gamma + 2.0 * e2, -(e2 + d.beta1 + d.beta2)};
  return p;
}

std::vector<EnergyLevel> solve_levels(const PotentialParams& p, const QuantumState& s,
                                      const SolveOptions& opts) {
  const double m = p.m0();
  const double margin = 1e-8 * m;
  const std::size_t n = static_cast<std::size_t>(std::max(opts.grid_points, 2));
  const std::vector<double> grid = linspace(-m + margin, m - margin, n);

  std::vector<double> res;
  try {
    res = residual_grid(p, s, grid, opts.branch, opts.execution);
  } catch (const NonRealA&) {
    return {};
  } catch (const DegenerateLevel&) {
    return {};
  }

  auto f = [&](double e) { return energy_residual(p, s, e, opts.branch); };
  std::vector<EnergyLevel> out;
  auto accept = [&](double e) {
    if (energy_rhs(p, s, e, opts.branch) < -1e-12 * m) return;
    EnergyLevel lvl;
    lvl.energy = e;
    lvl.residual = f(e);
    lvl.verified = std::abs(lvl.residual) <= opts.residual_tolerance * m;
    lvl.state = s;
    lvl.branch = e >= 0.0 ? Branch::particle : Branch::antiparticle;
    out.push_back(lvl);
  };

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double r0 = res[i];
    const double r1 = res[i + 1];
    if (r0 == 0.0) {
      accept(grid[i]);
      continue;
    }
    if (!(r0 * r1 < 0.0)) continue;
    double lo = grid[i];
    double hi = grid[i + 1];
    double flo = r0;
    while (hi - lo > 1e-12 * m) {
      const double mid = 0.5 * (lo + hi);
      const double fm = f(mid);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    const double root = 0.5 * (lo + hi);
    // Pick whichever bracket end (or midpoint) has the smaller residual.
    double best = root;
    for (double c : {lo, hi})
      if (std::abs(f(c)) < std::abs(f(best))) best = c;
    accept(best);
  }
  if (res[n - 1] == 0.0) accept(grid[n - 1]);
  return out;
}

std::vector<EnergyLevel> energy_explicit(const PotentialParams& p, const QuantumState& s,
                                         Acceptance acc, double tol) {
  const double q = p.q();
  const double al = p.alpha();
  const double m = p.m0();
  const double V = p.v0();
  const double S = p.s0();
  const double f = static_cast<double>(s.centrifugal().factor());
  const double rad = q * q * al * al + 4.0 * (S * S - V * V) + q * al * al * f;
  if (rad < 0.0)
    throw ConstraintViolated("q^2 alpha^2 + q alpha^2 (D+2l-2)^2 + 4 s0^2 >= q alpha^2 + 4 v0^2");

  std::vector<Candidate> cands;
  bool any = false;
  for (int sign : kappa_signs(acc)) {
    const double kappa = q * al * (2.0 * s.n + 1.0) + sign * std::sqrt(rad);
    const double den = 4.0 * V * V + kappa * kappa;
    if (den == 0.0) continue;
    const double eta = (4.0 * (V * V - S * S) + kappa * kappa - 8.0 * q * m * S) / den;
    const double inner = m * m / den - sq(eta / (4.0 * q));
    any |= push_pair(cands, eta * V / (2.0 * q), kappa, inner, sign);
  }
  if (!any) throw ConstraintViolated(kInnerConstraint);
  return finish(p, s, cands, acc, tol, DeltaBranch::sign_rule);
}

std::vector<EnergyLevel> energy_pure_vector(const PotentialParams& p, const QuantumState& s,
                                            Acceptance acc, double tol) {
  if (p.s0() != 0.0) throw InvalidParams("pure vector form needs s0 = 0");
  const double q = p.q();
  const double al = p.alpha();
  const double m = p.m0();
  const double V = p.v0();
  const double f = static_cast<double>(s.centrifugal().factor());
  const double rad = q * q * al * al + q * al * al * f - 4.0 * V * V;
  if (rad < 0.0) throw ConstraintViolated("q^2 alpha^2 + q alpha^2 (D+2l-2)^2 >= q alpha^2 + 4 v0^2");

  std::vector<Candidate> cands;
  bool any = false;
  for (int sign : kappa_signs(acc)) {
    const double kappa = q * al * (2.0 * s.n + 1.0) + sign * std::sqrt(rad);
    const double den = 4.0 * V * V + kappa * kappa;
    if (den == 0.0) continue;
    const double inner = m * m / den - 1.0 / (16.0 * q * q);
    any |= push_pair(cands, V / (2.0 * q), kappa, inner, sign);
  }
  if (!any) throw ConstraintViolated("16 q^2 m0^2 >= 4 v0^2 + kappa^2");
  return finish(p, s, cands, acc, tol, DeltaBranch::sign_rule);
}

std::vector<EnergyLevel> energy_pure_scalar(const PotentialParams& p, const QuantumState& s,
                                            Acceptance acc, double tol) {
  if (p.v0() != 0.0) throw InvalidParams("pure scalar form needs v0 = 0");
  const double q = p.q();
  const double al = p.alpha();
  const double m = p.m0();
  const double S = p.s0();
  const double f = static_cast<double>(s.centrifugal().factor());
  const double rad = q * q * al * al + 4.0 * S * S + q * al * al * f;
  if (rad < 0.0) throw ConstraintViolated("q^2 alpha^2 + q alpha^2 (D+2l-2)^2 + 4 s0^2 >= q alpha^2");

  std::vector<Candidate> cands;
  bool any = false;
  for (int sign : kappa_signs(acc)) {
    const double kappa = q * al * (2.0 * s.n + 1.0) + sign * std::sqrt(rad);
    if (kappa == 0.0) continue;
    const double first = kappa * kappa - 4.0 * S * S;
    const double second = sq(2.0 * S + 4.0 * q * m) - kappa * kappa;
    if (first < 0.0 || second < 0.0) continue;
    const double e = std::sqrt(first) * std::sqrt(second) / (4.0 * q * kappa);
    cands.push_back({e, Branch::particle, sign});
    cands.push_back({-e, Branch::antiparticle, sign});
    any = true;
  }
  if (!any) throw ConstraintViolated("(2 s0 + 4 q m0)^2 >= kappa^2 >= 4 s0^2");
  return finish(p, s, cands, acc, tol, DeltaBranch::sign_rule);
}

std::vector<EnergyLevel> energy_swave_1d(const PotentialParams& p, int n, Acceptance acc,
                                         double tol) {
  const QuantumState s(n, 0, 1);
  const double q = p.q();
  const double al = p.alpha();
  const double m = p.m0();
  const double V = p.v0();
  const double S = p.s0();
  const double rad = q * q * al * al + 4.0 * (S * S - V * V);
  if (rad < 0.0) throw ConstraintViolated("q^2 alpha^2 + 4 s0^2 >= 4 v0^2");

  std::vector<Candidate> cands;
  bool any = false;
  for (int sign : kappa_signs(acc)) {
    const double kappa = q * al * (2.0 * n + 1.0) + sign * std::sqrt(rad);
    const double k2 = kappa * kappa;
    const double den = 4.0 * V * V + k2;
    if (den == 0.0) continue;
    const double eta = (4.0 * (V * V - S * S) + k2 - 8.0 * q * m * S) / den;
    if (16.0 * q * q * m * m < eta * eta * den) continue;
    const double first = k2 + 4.0 * (V * V - S * S);
    const double second = sq(2.0 * S + 4.0 * q * m) - k2 - 4.0 * V * V;
    const double prod = first * second;
    if (prod < 0.0) continue;
    const double w = kappa / (4.0 * q * den) * std::sqrt(prod);
    const double center = eta * V / (2.0 * q);
    cands.push_back({center + w, Branch::particle, sign});
    cands.push_back({center - w, Branch::antiparticle, sign});
    any = true;
  }
  if (!any) throw ConstraintViolated(kInnerConstraint);
  return finish(p, s, cands, acc, tol, DeltaBranch::sign_rule);
}

std::vector<EnergyLevel> energy_3d(const PotentialParams& p, int n, int l, Acceptance acc,
                                   double tol) {
  require_q(p, 1.0);
  const QuantumState s(n, l, 3);
  const double al = p.alpha();
  const double m = p.m0();
  const double V = p.v0();
  const double S = p.s0();
  const double B = S * S - V * V + al * al * l * (l + 1.0);
  const double rad = al * al + 4.0 * B;
  if (rad < 0.0) throw ConstraintViolated("alpha^2 + 4 B >= 0, B = s0^2 - v0^2 + alpha^2 l(l+1)");

  std::vector<Candidate> cands;
  bool any = false;
  for (int sign : kappa_signs(acc)) {
    const double kappa = al * (2.0 * n + 1.0) + sign * std::sqrt(rad);
    const double den = 4.0 * V * V + kappa * kappa;
    if (den == 0.0) continue;
    const double eta = (4.0 * (V * V - S * S) + kappa * kappa - 8.0 * m * S) / den;
    any |= push_pair(cands, eta * V / 2.0, kappa, m * m / den - sq(eta / 4.0), sign);
  }
  if (!any) throw ConstraintViolated("16 m0^2 >= eta^2 (4 v0^2 + kappa^2)");
  return finish(p, s, cands, acc, tol, DeltaBranch::sign_rule);
}

std::vector<EnergyLevel> energy_3d_pure_vector(const PotentialParams& p, int n, int l,
                                               Acceptance acc, double tol) {
  require_q(p, 1.0);
  if (p.s0() != 0.0) throw InvalidParams("pure vector form needs s0 = 0");
  const QuantumState s(n, l, 3);
  const double al = p.alpha();
  const double m = p.m0();
  const double V = p.v0();
  const double rad = al * al * sq(2.0 * l + 1.0) - 4.0 * V * V;
  if (rad < 0.0) throw ConstraintViolated("(2l+1) alpha >= 2 v0");

  std::vector<Candidate> cands;
  bool any = false;
  for (int sign : kappa_signs(acc)) {
    const double kappa = al * (2.0 * n + 1.0) + sign * std::sqrt(rad);
    const double den = 4.0 * V * V + kappa * kappa;
    if (den == 0.0) continue;
    any |= push_pair(cands, V / 2.0, kappa, m * m / den - 1.0 / 16.0, sign);
  }
  if (!any) throw ConstraintViolated("16 m0^2 >= 4 v0^2 + kappa^2");
  return finish(p, s, cands, acc, tol, DeltaBranch::sign_rule);
}

std::vector<EnergyLevel> energy_3d_swave(const PotentialParams& p, int n, Acceptance acc,
                                         double tol) {
  const QuantumState s(n, 0, 3);
  const double q = p.q();
  const double al = p.alpha();
  const double m = p.m0();
  const double V = p.v0();
  const double S = p.s0();
  const double rad = q * q * al * al + 4.0 * (S * S - V * V);
  if (rad < 0.0) throw ConstraintViolated("q^2 alpha^2 + 4 (s0^2 - v0^2) >= 0");

  std::vector<Candidate> cands;
  bool any = false;
  for (int sign : kappa_signs(acc)) {
    const double kappa = q * al * (2.0 * n + 1.0) + sign * std::sqrt(rad);
    const double den = 4.0 * V * V + kappa * kappa;
    if (den == 0.0) continue;
    const double eta = (4.0 * (V * V - S * S) + kappa * kappa - 8.0 * q * m * S) / den;
    any |= push_pair(cands, eta * V / (2.0 * q), kappa, m * m / den - sq(eta / (4.0 * q)), sign,
                     acc != Acceptance::formula);
  }
  if (!any) throw ConstraintViolated(kInnerConstraint);
  return finish(p, s, cands, acc, tol, DeltaBranch::sign_rule);
}

double equal_coupling_delta(const QuantumState& s) {
  return 0.5 * (1.0 + std::abs(s.dim + 2.0 * s.l - 2.0));
}

EnergyLevel energy_equal_coupling(const PotentialParams& p, const QuantumState& s) {
  require_q(p, 1.0);
  if (p.s0() != p.v0()) throw InvalidParams("equal-coupling form needs s0 = v0");
  const double m = p.m0();
  const double r0 = p.range();
  const double V = p.v0();
  const double nd = s.n + equal_coupling_delta(s);
  auto rhs = [&](double e) { return r0 * V * (m + e) / nd - nd / (2.0 * r0); };
  auto g = [&](double e) { return std::sqrt(m * m - e * e) - rhs(e); };

  const double margin = 1e-8 * m;
  const std::vector<double> grid = linspace(-m + margin, m - margin, 4096);
  std::optional<double> best;
  double prev = g(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = g(grid[i]);
    if (prev == 0.0 || prev * cur < 0.0) {
      double lo = grid[i - 1];
      double hi = grid[i];
      double flo = prev;
      while (prev != 0.0 && hi - lo > 1e-12 * m) {
        const double mid = 0.5 * (lo + hi);
        const double fm = g(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      const double root = prev == 0.0 ? grid[i - 1] : 0.5 * (lo + hi);
      if (rhs(root) >= -1e-12 * m) best = root;
    }
    prev = cur;
  }
  if (!best) throw NoRoot("equal-coupling energy equation has no root in (-m0, m0)");

  EnergyLevel lvl;
  lvl.energy = *best;
  lvl.state = s;
  lvl.branch = Branch::particle;
  lvl.residual = g(*best);
  lvl.verified = std::abs(lvl.residual) <= kResidualTolerance * m;
  return lvl;
}

double nonrelativistic_limit(const PotentialParams& p, const QuantumState& s) {
  const double m = p.m0();
  const double al = p.alpha();
  const double nd = s.n + equal_coupling_delta(s);
  const double bracket = (4.0 * m * p.v0() - al * al * nd * nd) / nd;
  return -bracket * bracket / (8.0 * m * al * al);
}

double weak_coupling_energy(const PotentialParams& p, const QuantumState& s) {
  const double m = p.m0();
  const double nd = s.n + equal_coupling_delta(s);
  const double t = p.v0() * p.range() / (p.q() * nd);
  return nonrelativistic_limit(p, s) + m + 4.0 * m * t * t * t * t;
}

std::vector<EnergyLevel> energy_woods_saxon(const PotentialParams& p, const QuantumState& s,
                                            Acceptance acc, double tol) {
  const double al = p.alpha();
  const double m = p.m0();
  const double V = p.v0();
  const double S = p.s0();
  const double c = s.dim + 2.0 * s.l - 2.0;
  const double rad = 2.0 * al * al + 4.0 * (S * S - V * V) - al * al * c * c;
  if (rad < 0.0) throw ConstraintViolated("2 alpha^2 + 4 s0^2 >= 4 v0^2 + alpha^2 (D+2l-2)^2");

  std::vector<Candidate> cands;
  bool any = false;
  for (int sign : kappa_signs(acc)) {
    const double kappa = sign * std::sqrt(rad) - al * (2.0 * s.n + 1.0);
    const double den = 4.0 * V * V + kappa * kappa;
    if (den == 0.0) continue;
    const double xi = (4.0 * (V * V - S * S) + kappa * kappa + 8.0 * m * S) / den;
    any |= push_pair(cands, -xi * V / 2.0, kappa, m * m / den - sq(xi / 4.0), sign);
  }
  if (!any) throw ConstraintViolated("16 m0^2 >= xi^2 (4 v0^2 + kappa^2)");
  return finish(p.with_q(-1.0), s, cands, acc, tol, DeltaBranch::plus);
}

std::vector<EnergyLevel> energy_woods_saxon_pure_vector(const PotentialParams& p,
                                                        const QuantumState& s, Acceptance acc,
                                                        double tol) {
  if (p.s0() != 0.0) throw InvalidParams("pure vector form needs s0 = 0");
  const double al = p.alpha();
  const double m = p.m0();
  const double V = p.v0();
  const double c = s.dim + 2.0 * s.l - 2.0;
  const double rad = 2.0 * al * al - al * al * c * c - 4.0 * V * V;
  if (rad < 0.0) throw ConstraintViolated("2 alpha^2 >= 4 v0^2 + alpha^2 (D+2l-2)^2");

  std::vector<Candidate> cands;
  bool any = false;
  for (int sign : kappa_signs(acc)) {
    const double kappa = sign * std::sqrt(rad) - al * (2.0 * s.n + 1.0);
    const double den = 4.0 * V * V + kappa * kappa;
    if (den == 0.0) continue;
    any |= push_pair(cands, -V / 2.0, kappa, m * m / den - 1.0 / 16.0, sign);
  }
  if (!any) throw ConstraintViolated("16 m0^2 >= 4 v0^2 + kappa^2");
  return finish(p.with_q(-1.0), s, cands, acc, tol, DeltaBranch::plus);
}

LevelCapacity level_capacity(const PotentialParams& p, const CentrifugalSpec& c) {
  const double q = p.q();
  const double al = p.alpha();
  const double m = p.m0();
  const double V = p.v0();
  const double f = static_cast<double>(c.factor());
  const double r1 = 4.0 * q * q * m * m - V * V;
  const double r2 = q * al * al / 4.0 * (q + f) - V * V;

  LevelCapacity out{std::nullopt, kNaN, false};
  if (r1 >= 0.0 && r2 >= 0.0) {
    out.bound = (std::sqrt(r1) - std::sqrt(r2)) / (q * al) - 0.5;
    out.existence_condition = q * al + std::sqrt(4.0 * r2) <= 2.0 * std::sqrt(r1);
    if (out.bound >= 0.0) out.n_max = static_cast<int>(std::floor(out.bound));
  }
  return out;
}

LevelCapacity ws_level_capacity(const PotentialParams& p, const CentrifugalSpec& c) {
  const double al = p.alpha();
  const double m = p.m0();
  const double V = p.v0();
  const double k = c.dim + 2.0 * c.l - 2.0;
  const double r1 = al * al / 4.0 * (2.0 - k * k) - V * V;
  const double r2 = 4.0 * m * m - V * V;

  LevelCapacity out{std::nullopt, kNaN, false};
  if (r1 >= 0.0 && r2 >= 0.0) {
    out.bound = (std::sqrt(r1) - std::sqrt(r2)) / al - 0.5;
    out.existence_condition = std::sqrt(4.0 * r1) >= al + 2.0 * std::sqrt(r2);
    if (out.bound >= 0.0) out.n_max = static_cast<int>(std::floor(out.bound));
  }
  return out;
}

std::string to_string(Branch b) { return b == Branch::particle ? "particle" : "antiparticle"; }

} // namespace kgh
