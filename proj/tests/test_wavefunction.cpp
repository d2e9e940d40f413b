#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "reference.hpp"

#include "kgh/errors.hpp"
#include "kgh/jacobi.hpp"
#include "kgh/quadrature.hpp"
#include "kgh/spectrum.hpp"
#include "kgh/wavefunction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

using namespace kgh;

namespace {

// Verified levels used throughout: equal coupling, q = 1, one dimension.
const PotentialParams kEqual(0.1, 0.1, 0.1, 1.0);

EnergyLevel top_level(const PotentialParams& p, const QuantumState& s) {
  const auto roots = solve_levels(p, s);
  REQUIRE(!roots.empty());
  return roots.back();
}

EnergyLevel formula_level(const PotentialParams& p, const QuantumState& s) {
  for (const EnergyLevel& l : energy_pure_vector(p, s, Acceptance::formula))
    if (l.branch == Branch::particle && l.kappa_sign == +1) return l;
  FAIL("no formula level");
  return {};
}

} // namespace

TEST_CASE("Jacobi polynomials") {
  for (double x : {-1.0, -0.3, 0.0, 0.6, 1.0}) {
    CHECK(jacobi(JacobiParams(0, 0.4, 2.0), x) == 1.0);
    for (auto [a, b] : {std::pair{0.37, 1.2}, std::pair{-0.5, 3.0}, std::pair{4.0, -0.9}})
      CHECK(jacobi(JacobiParams(1, a, b), x) ==
            doctest::Approx((a - b) / 2.0 + (a + b + 2.0) * x / 2.0).epsilon(1e-15));
  }
  const double rec = jacobi(JacobiParams(4, 0.37, 1.2), 0.5);
  CHECK(std::abs(rec - testref::jacobi_rodrigues(4, 0.37, 1.2, 0.5)) <= 1e-8 * std::abs(rec));

  std::mt19937 rng(20261014);
  std::uniform_real_distribution<double> param(-0.95, 6.0), arg(-0.9, 0.9);
  std::uniform_int_distribution<int> degree(0, 6);
  for (int i = 0; i < 200; ++i) {
    const int n = degree(rng);
    const double a = param(rng), b = param(rng), x = arg(rng);
    const double v = jacobi(JacobiParams(n, a, b), x);
    const double ref = testref::jacobi_rodrigues(n, a, b, x);
    CHECK(std::abs(v - ref) <= 1e-8 * std::max(1.0, std::abs(ref)));
  }

  CHECK_THROWS_AS(JacobiParams(2, -1.0, 0.0), InvalidParams);
  CHECK_THROWS_AS(JacobiParams(2, 0.0, -1.5), InvalidParams);
  CHECK_THROWS_AS(JacobiParams(-1, 0.0, 0.0), InvalidParams);
  CHECK(jacobi_outside_interval(1.5));
  CHECK_FALSE(jacobi_outside_interval(-1.0));
}

TEST_CASE("radial eigenfunction shape") {
  const RadialWavefunction w0 = normalized(make_radial_wavefunction(kEqual, top_level(kEqual, QuantumState(0, 0, 1))));
  CHECK(std::abs(radial_eval(w0, 800.0)) < 1e-12);
  CHECK(node_count(w0) == 0);
  CHECK_FALSE(w0.experimental);
  CHECK(w0.eps > 0.0);
  CHECK(w0.delta_exp > 0.0);
  CHECK_THROWS_AS(radial_eval(w0, 0.0), DomainError);

  // n = 0 in one dimension: exponential times a power of the base factor
  const double r = 7.3, k = w0.decay, al = kEqual.alpha();
  const double expected = std::exp(-k * r) * std::pow(1.0 - std::exp(-al * r), w0.delta_exp);
  const double ratio = radial_eval(w0, r) / expected;
  CHECK(radial_eval(w0, 2.1) / (std::exp(-k * 2.1) * std::pow(1.0 - std::exp(-al * 2.1), w0.delta_exp)) ==
        doctest::Approx(ratio).epsilon(1e-12));

  // g(0) = 0 for q = 1
  CHECK(std::abs(reduced_eval(w0, 1e-9)) < 1e-6);
}

TEST_CASE("node counts") {
  for (int n = 0; n <= 2; ++n) {
    const RadialWavefunction w = make_radial_wavefunction(kEqual, top_level(kEqual, QuantumState(n, 0, 1)));
    CHECK(node_count(w) == n);
  }
  // the printed-table energies, whether or not they are eigenvalues, carry P_n
  const PotentialParams pv(0.25, 0.0, 0.5, 1.0);
  CHECK(node_count(make_radial_wavefunction(pv, formula_level(pv, QuantumState(1, 0, 1)))) == 1);
  CHECK(node_count(make_radial_wavefunction(pv, formula_level(pv, QuantumState(2, 0, 1)))) == 2);
  CHECK(node_grid(make_radial_wavefunction(pv, formula_level(pv, QuantumState(1, 0, 1)))).size() == 10000);
}

TEST_CASE("normalisation") {
  for (int n = 0; n <= 2; ++n) {
    const RadialWavefunction raw = make_radial_wavefunction(kEqual, top_level(kEqual, QuantumState(n, 0, 1)));
    const RadialWavefunction w = normalized(raw);
    CHECK(radial_norm_integral(w) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(radial_norm_integral(w, quad::Rule::gauss_kronrod, 2.0) == doctest::Approx(1.0).epsilon(1e-8));
    const double simpson = radial_normalize(raw, quad::Rule::simpson);
    CHECK(simpson == doctest::Approx(w.norm).epsilon(1e-6));
  }
}

TEST_CASE("eigenfunction solves the approximated radial equation") {
  struct Case {
    PotentialParams p;
    QuantumState s;
  };
  const Case cases[] = {{kEqual, QuantumState(2, 0, 1)},
                        {PotentialParams(0.25, 0.25, 0.2, 1.0), QuantumState(0, 1, 3)},
                        {PotentialParams(0.25, 0.0, 0.5, 2.0), QuantumState(0, 0, 1)}};
  for (const Case& c : cases) {
    const RadialWavefunction w = normalized(make_radial_wavefunction(c.p, top_level(c.p, c.s)));
    const double al = c.p.alpha(), m = c.p.m0(), e = w.level.energy;
    const double start = w.domain_start();
    double worst = 0, peak = 0;
    for (double t = 0.01; t <= 20.0; t *= 1.05) {
      // the step shrinks towards the domain start, where g is not smooth for q != 1
      const double r = start + t / al, h = std::min(1e-3, t / 50.0) / al;
      const double g = reduced_eval(w, r);
      const double d2 = (-reduced_eval(w, r + 2.0 * h) + 16.0 * reduced_eval(w, r + h) - 30.0 * g +
                         16.0 * reduced_eval(w, r - h) - reduced_eval(w, r - 2.0 * h)) /
                        (12.0 * h * h);
      const double W = std::pow(m + eval_scalar(c.p, r), 2) - std::pow(e - eval_vector(c.p, r), 2) +
                       centrifugal_approx(c.s.centrifugal(), c.p, r);
      worst = std::max(worst, std::abs(d2 - W * g));
      peak = std::max(peak, std::abs(g));
    }
    CHECK(worst <= 1e-6 * peak);
  }
}

TEST_CASE("angular factors") {
  // n_j = 0 is a pure power of sin
  for (double t : {0.3, 1.1, 2.5})
    CHECK(angular_factor(3, 2, 2, t) / std::pow(std::sin(t), 2) ==
          doctest::Approx(angular_factor(3, 2, 2, 1.0) / std::pow(std::sin(1.0), 2)).epsilon(1e-12));

  // D = 5, j = 2, l_2 = 1, l_1 = 0 vs a Rodrigues evaluation normalised here
  auto shape = [](double t) { return testref::jacobi_rodrigues(1, 0.0, 0.0, std::cos(t)); };
  const double norm = 1.0 / std::sqrt(testref::integrate(
                                [&](double t) { return shape(t) * shape(t) * std::sin(t); }, 0.0, std::numbers::pi));
  for (double t : {std::numbers::pi / 2.0, 0.4, 2.0})
    CHECK(angular_factor(2, 1, 0, t) == doctest::Approx(norm * shape(t)).epsilon(1e-9));

  // orthonormality under (sin theta)^{j-1}
  for (int j = 2; j <= 4; ++j)
    for (int a = 1; a <= 4; ++a)
      for (int b = 1; b <= 4; ++b) {
        const double v = testref::integrate(
            [&](double t) { return angular_factor(j, a, 1, t) * angular_factor(j, b, 1, t) * std::pow(std::sin(t), j - 1); },
            0.0, std::numbers::pi);
        CHECK(std::abs(v - (a == b ? 1.0 : 0.0)) <= 1e-8);
      }

  CHECK_THROWS_AS(angular_factor(3, 1, 2, 0.5), InvalidQuantumNumbers);
  CHECK_THROWS_AS(angular_factor_last(2, 1, 0, 0.5), InvalidQuantumNumbers);
}

TEST_CASE("last polar factor and azimuthal factor") {
  // D = 3: l = m = 0 constant, l = 1, m = 0 proportional to cos
  CHECK(angular_factor_last(3, 0, 0, 0.2) == doctest::Approx(angular_factor_last(3, 0, 0, 2.9)));
  for (double t : {0.2, 1.0, 2.6})
    CHECK(angular_factor_last(3, 1, 0, t) == doctest::Approx(angular_factor_last(3, 1, 0, 0.0) * std::cos(t)).epsilon(1e-12));
  CHECK(std::abs(angular_factor_last(3, 1, 0, std::numbers::pi / 2.0)) < 1e-14);

  for (int l = 0; l <= 3; ++l)
    for (int k = 0; k <= l; ++k) {
      const double v = testref::integrate(
          [&](double t) { return std::pow(angular_factor_last(4, l, k, t), 2) * std::sin(t) * std::sin(t); }, 0.0,
          std::numbers::pi);
      CHECK(v == doctest::Approx(1.0).epsilon(1e-8));
    }

  CHECK(std::abs(azimuthal(0, 1.7)) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)));
  CHECK(azimuthal(0, 0.3) == azimuthal(0, 2.2));
  const double one = testref::integrate([](double t) { return std::norm(azimuthal(2, t)); }, 0.0, 2.0 * std::numbers::pi);
  CHECK(one == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(azimuthal(-1, 0.0), InvalidQuantumNumbers);
}

TEST_CASE("printed Gamma normalisations are kept for comparison only") {
  CHECK(angular_norm_printed(2, 1, 0) == doctest::Approx(angular_norm(2, 1, 0)));
  CHECK(angular_norm_printed(3, 3, 2) != doctest::Approx(angular_norm(3, 3, 2)));
  CHECK(angular_norm_last_printed(5, 1, 1) != doctest::Approx(angular_norm(4, 1, 1)));
}

TEST_CASE("total wavefunction") {
  CHECK_THROWS_AS(make_angular_state(3, 1, {2}), InvalidQuantumNumbers);
  CHECK_THROWS_AS(make_angular_state(4, 1, {0}), InvalidQuantumNumbers);

  // D = 3, l = 0 is radial times a constant
  const PotentialParams p3(0.25, 0.25, 0.2, 1.0);
  const RadialWavefunction s3 = normalized(make_radial_wavefunction(p3, top_level(p3, QuantumState(0, 0, 3))));
  const AngularState a0 = make_angular_state(3, 0, {0});
  const std::array<double, 2> ang1{0.3, 1.2}, ang2{2.0, 0.4};
  CHECK(std::abs(total_wavefunction(s3, a0, ang1, 2.0) - total_wavefunction(s3, a0, ang2, 2.0)) < 1e-14);
  CHECK(std::abs(total_wavefunction(s3, a0, ang1, 2.0)) ==
        doctest::Approx(std::abs(radial_eval(s3, 2.0)) / std::sqrt(4.0 * std::numbers::pi)));

  const RadialWavefunction p1 = normalized(make_radial_wavefunction(p3, top_level(p3, QuantumState(0, 1, 3))));
  const AngularState a1 = make_angular_state(3, 1, {1});
  const auto t1 = total_wavefunction(p1, a1, ang1, 3.0) / total_wavefunction(p1, a1, ang1, 1.0);
  const auto t2 = total_wavefunction(p1, a1, ang2, 3.0) / total_wavefunction(p1, a1, ang2, 1.0);
  CHECK(std::abs(t1 - t2) < 1e-12);

  const PotentialParams q2(0.25, 0.0, 0.5, 2.0);
  const RadialWavefunction w2 = make_radial_wavefunction(q2, top_level(q2, QuantumState(0, 0, 1)));
  CHECK_THROWS_AS(total_wavefunction(w2, make_angular_state(1, 0, {}), std::span<const double>{}, 3.0), InvalidParams);
}

TEST_CASE("normalisation over the full volume element") {
  const PotentialParams p(0.25, 0.25, 0.2, 1.0);
  struct Case {
    int dim, l;
    std::vector<int> chain;
  };
  for (const Case& c : {Case{3, 1, {1}}, Case{3, 1, {0}}, Case{4, 1, {0, 1}}, Case{4, 2, {1, 1}}}) {
    const RadialWavefunction w = normalized(make_radial_wavefunction(p, top_level(p, QuantumState(0, c.l, c.dim))));
    const AngularState a = make_angular_state(c.dim, c.l, c.chain);
    const double pi = std::numbers::pi;
    // angular shell at fixed r, then the radial integral
    auto shell = [&](double r) {
      if (c.dim == 3) {
        return testref::integrate(
            [&](double t2) {
              return testref::integrate(
                  [&](double t1) {
                    const std::array<double, 2> ang{t1, t2};
                    return std::norm(total_wavefunction(w, a, ang, r)) * std::sin(t2);
                  },
                  0.0, 2.0 * pi);
            },
            0.0, pi);
      }
      return testref::integrate(
          [&](double t3) {
            return testref::integrate(
                [&](double t2) {
                  const std::array<double, 3> ang{0.7, t2, t3};
                  return 2.0 * pi * std::norm(total_wavefunction(w, a, ang, r)) * std::sin(t2) *
                         std::sin(t3) * std::sin(t3);
                },
                0.0, pi);
          },
          0.0, pi);
    };
    const double cutoff = radial_cutoff(w);
    double total = 0;
    double lo = 0.0;
    for (double hi : {1.0 / p.alpha(), 4.0 / p.alpha(), 16.0 / p.alpha(), cutoff}) {
      total += testref::integrate([&](double r) { return r <= 0 ? 0.0 : shell(r) * std::pow(r, c.dim - 1); }, lo, hi);
      lo = hi;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
  }
}
