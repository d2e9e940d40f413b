#include "kgh/nu.hpp"

#include "kgh/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace kgh::nu {

namespace {

constexpr double kSquareTolerance = 1e-10;

// (sigma' - tau_tilde)/2
Linear half_shift(const NUProblem& p) {
  return {(p.sigma.c1 - p.tau_tilde.d0) / 2.0, (2.0 * p.sigma.c2 - p.tau_tilde.d1) / 2.0};
}

// Coefficients of ((sigma' - tau_tilde)/2)^2 - sigma_tilde + k sigma.
Quadratic radicand(const NUProblem& p, double k) {
  const Linear h = half_shift(p);
  return {h.d0 * h.d0 - p.sigma_tilde.c0 + k * p.sigma.c0,
          2.0 * h.d0 * h.d1 - p.sigma_tilde.c1 + k * p.sigma.c1,
          h.d1 * h.d1 - p.sigma_tilde.c2 + k * p.sigma.c2};
}

struct KRoots {
  std::vector<double> values;
  bool degenerate = false;
};

KRoots solve_for_k(const NUProblem& p) {
  const Quadratic base = radicand(p, 0.0);
  const Quadratic& s = p.sigma;
  // (A1 + k s1)^2 - 4 (A0 + k s0)(A2 + k s2) = qa k^2 + qb k + qc
  const double qa = s.c1 * s.c1 - 4.0 * s.c0 * s.c2;
  const double qb = 2.0 * base.c1 * s.c1 - 4.0 * (base.c0 * s.c2 + base.c2 * s.c0);
  const double qc = base.c1 * base.c1 - 4.0 * base.c0 * base.c2;

  KRoots out;
  const double coeff_scale = std::abs(qa) + std::abs(qb) + std::abs(qc);
  if (coeff_scale == 0.0) throw NoRealK("radicand is identically a perfect square for every k");

  if (std::abs(qa) <= 1e-14 * coeff_scale) {
    if (std::abs(qb) <= 1e-14 * coeff_scale) throw NoRealK("k-condition has no solution");
    out.values.push_back(-qc / qb);
    return out;
  }

  double disc = qb * qb - 4.0 * qa * qc;
  const double disc_scale = qb * qb + std::abs(4.0 * qa * qc);
  if (disc < 0.0) {
    if (disc < -kSquareTolerance * disc_scale) throw NoRealK("k-condition has complex roots");
    disc = 0.0;
    out.degenerate = true;
  } else if (disc > 0.0 && disc <= kSquareTolerance * disc_scale) {
    out.degenerate = true;
  }

  if (disc == 0.0) {
    out.values.push_back(-qb / (2.0 * qa));
    return out;
  }
  const double root = std::sqrt(disc);
  const double t = -0.5 * (qb + std::copysign(root, qb));
  double k1 = t / qa;
  double k2 = t != 0.0 ? qc / t : -k1;
  if (k1 > k2) std::swap(k1, k2);
  out.values = {k1, k2};
  return out;
}

// Linear u with u^2 equal to the (perfect-square) radicand.
std::optional<Linear> linear_root(const Quadratic& q) {
  const double scale = std::abs(q.c0) + std::abs(q.c1) + std::abs(q.c2);
  const double tol = 1e-12 * std::max(scale, std::numeric_limits<double>::min());
  if (q.c2 < -tol || q.c0 < -tol) return std::nullopt;
  const double c0 = std::max(q.c0, 0.0);
  const double c2 = std::max(q.c2, 0.0);
  Linear u;
  if (c2 >= c0) {
    u.d1 = std::sqrt(c2);
    u.d0 = u.d1 > 0.0 ? q.c1 / (2.0 * u.d1) : std::sqrt(c0);
  } else {
    u.d0 = std::sqrt(c0);
    u.d1 = u.d0 > 0.0 ? q.c1 / (2.0 * u.d0) : std::sqrt(c2);
  }
  return u;
}

bool same_branch(const NUBranch& a, const NUBranch& b) {
  auto close = [](double x, double y) {
    return std::abs(x - y) <= 1e-13 * std::max({1.0, std::abs(x), std::abs(y)});
  };
  return close(a.k, b.k) && close(a.pi.d0, b.pi.d0) && close(a.pi.d1, b.pi.d1);
}

std::optional<SigmaFamily> classify(const Quadratic& s, double& scale) {
  const double mag = std::abs(s.c0) + std::abs(s.c1) + std::abs(s.c2);
  if (mag == 0.0) return std::nullopt;
  const double tol = 1e-12 * mag;
  if (std::abs(s.c0) <= tol && std::abs(s.c1 + s.c2) <= tol && s.c1 != 0.0) {
    scale = s.c1;
    return SigmaFamily::unit_interval;
  }
  if (std::abs(s.c1) <= tol && std::abs(s.c0 + s.c2) <= tol && s.c0 != 0.0) {
    scale = s.c0;
    return SigmaFamily::symmetric;
  }
  return std::nullopt;
}

PowerPair exponents_of_ratio(SigmaFamily family, double c, double n0, double n1) {
  // integral of (n0 + n1 s)/sigma
  if (family == SigmaFamily::unit_interval) return {n0 / c, -(n0 + n1) / c};
  return {-(n0 + n1) / (2.0 * c), (n0 - n1) / (2.0 * c)};
}

} // namespace

double relative_square_defect(const NUProblem& p, double k) {
  const Quadratic q = radicand(p, k);
  const double defect = q.c1 * q.c1 - 4.0 * q.c0 * q.c2;
  const double scale = q.c1 * q.c1 + std::abs(4.0 * q.c0 * q.c2);
  if (scale == 0.0) return 0.0;
  return std::abs(defect) / scale;
}

std::vector<NUBranch> candidate_branches(const NUProblem& p) {
  const KRoots ks = solve_for_k(p);
  const Linear h = half_shift(p);
  std::vector<NUBranch> out;
  for (double k : ks.values) {
    const auto u = linear_root(radicand(p, k));
    if (!u) continue;
    for (double sign : {+1.0, -1.0}) {
      NUBranch b;
      b.k = k;
      b.pi = {h.d0 + sign * u->d0, h.d1 + sign * u->d1};
      b.tau = {p.tau_tilde.d0 + 2.0 * b.pi.d0, p.tau_tilde.d1 + 2.0 * b.pi.d1};
      b.lambda = k + b.pi.d1;
      b.degenerate_discriminant = ks.degenerate;
      const bool dup = std::any_of(out.begin(), out.end(),
                                   [&](const NUBranch& o) { return same_branch(o, b); });
      if (!dup) out.push_back(b);
    }
  }
  if (out.empty()) throw NoRealK("no real linear square root for any admissible k");
  return out;
}

NUBranch select_physical(const NUProblem& p, std::span<const NUBranch> branches) {
  double scale = 0.0;
  const auto family = classify(p.sigma, scale);

  const NUBranch* best = nullptr;
  bool best_normalizable = false;
  for (const NUBranch& b : branches) {
    if (!(b.tau.slope() < 0.0)) continue;
    bool normalizable = true;
    if (family) {
      const PowerPair e = exponents_of_ratio(*family, scale, b.pi.d0, b.pi.d1);
      normalizable = e.first >= -1e-12 && e.second >= -1e-12;
    }
    const bool better = best == nullptr || (normalizable && !best_normalizable) ||
                        (normalizable == best_normalizable && b.tau.slope() < best->tau.slope());
    if (better) {
      best = &b;
      best_normalizable = normalizable;
    }
  }
  if (best == nullptr) throw NoPhysicalBranch("no branch with tau' < 0");
  return *best;
}

double lambda_ladder(const NUBranch& b, const Quadratic& sigma, int n) {
  const double nn = static_cast<double>(n);
  return -nn * b.tau.slope() - nn * (nn - 1.0) / 2.0 * sigma.second_derivative();
}

WeightAndPhi weight_and_phi(const NUBranch& b, const NUProblem& p) {
  double c = 0.0;
  const auto family = classify(p.sigma, c);
  if (!family) throw UnsupportedSigma("sigma must be c s(1-s) or c(1-s^2)");

  // (sigma rho)' = tau rho  =>  rho'/rho = (tau - sigma')/sigma
  const double t0 = b.tau.d0 - p.sigma.c1;
  const double t1 = b.tau.d1 - 2.0 * p.sigma.c2;
  WeightAndPhi out;
  out.family = *family;
  out.rho = exponents_of_ratio(*family, c, t0, t1);
  out.phi = exponents_of_ratio(*family, c, b.pi.d0, b.pi.d1);
  return out;
}

} // namespace kgh::nu
