#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kgh/errors.hpp"
#include "kgh/potential.hpp"

#include <cmath>
#include <vector>

using namespace kgh;

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(PotentialParams(0.1, 0.1, 1.0, 0.0), InvalidParams);
  CHECK_THROWS_AS(PotentialParams(0.1, 0.1, 0.0, 1.0), InvalidParams);
  CHECK_THROWS_AS(PotentialParams(0.1, 0.1, -1.0, 1.0), InvalidParams);
  CHECK_THROWS_AS(PotentialParams(0.1, 0.1, 1.0, 1.0, 0.0), InvalidParams);
  CHECK_THROWS_AS(PotentialParams(NAN, 0.1, 1.0, 1.0), InvalidParams);
  CHECK_NOTHROW(PotentialParams(-0.3, 0.0, 0.2, -1.0));
  CHECK_THROWS_AS(CentrifugalSpec(0, 0), InvalidQuantumNumbers);
  CHECK_THROWS_AS(CentrifugalSpec(3, -1), InvalidQuantumNumbers);
}

TEST_CASE("vector and scalar forms") {
  const PotentialParams decay(0.25, 0.0, 1.0, 1.0);
  CHECK(std::abs(eval_vector(decay, 60.0)) < 1e-25);

  // short range behaves like -v0 r0 / r
  const double ze2 = 0.3, alpha = 0.2;
  const PotentialParams coulomb(ze2 * alpha, 0.0, alpha, 1.0);
  const double r = 1.0 / alpha / 100.0;
  CHECK(eval_vector(coulomb, r) == doctest::Approx(-ze2 / r).epsilon(1e-2));

  const PotentialParams p(0.25, 0.4, 0.5, 2.0);
  const double expected = -0.25 * std::exp(-0.5) / (1.0 - 2.0 * std::exp(-0.5));
  CHECK(eval_vector(p, 1.0) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(eval_scalar(p, 1.0) == doctest::Approx(expected * 0.4 / 0.25).epsilon(1e-15));
}

TEST_CASE("pole and domain errors") {
  const PotentialParams p(0.25, 0.0, 0.5, 2.0);
  CHECK(p.pole_radius() == doctest::Approx(std::log(2.0) / 0.5));
  CHECK_THROWS_AS(eval_vector(p, p.pole_radius()), PoleAtRadius);
  CHECK_THROWS_AS(eval_vector(p, 0.0), DomainError);
  CHECK_THROWS_AS(centrifugal_exact(CentrifugalSpec(3, 1), -1.0), DomainError);
}

TEST_CASE("centrifugal factor and exact term") {
  CHECK(CentrifugalSpec(1, 0).factor() == 0);
  CHECK(CentrifugalSpec(2, 0).factor() == -1);
  CHECK(CentrifugalSpec(3, 0).factor() == 0);
  CHECK(CentrifugalSpec(3, 1).factor() == 8);
  CHECK(centrifugal_exact(CentrifugalSpec(3, 0), 0.7) == 0.0);
  CHECK(centrifugal_exact(CentrifugalSpec(1, 0), 0.7) == 0.0);
  CHECK(centrifugal_exact(CentrifugalSpec(3, 1), 2.0) == doctest::Approx(0.5));
}

TEST_CASE("centrifugal approximation") {
  const PotentialParams p(0.1, 0.0, 0.1, 1.0);
  const CentrifugalSpec c31(3, 1);
  CHECK(centrifugal_approx(CentrifugalSpec(3, 0), p, 3.0) == 0.0);

  // r^2 approx(r) -> factor/4 on a decreasing sequence
  double prev = INFINITY;
  for (double r : {1.0, 0.1, 0.01, 0.001}) {
    const double err = std::abs(r * r * centrifugal_approx(c31, p, r) - 2.0);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-6);

  const double rel = std::abs(centrifugal_approx(c31, p, 1.0) - centrifugal_exact(c31, 1.0)) /
                     centrifugal_exact(c31, 1.0);
  CHECK(rel < 1e-2);
}

TEST_CASE("approximation error profile") {
  const PotentialParams p(0.1, 0.0, 1.0, 1.0);
  std::vector<double> small;
  for (int i = 1; i <= 10; ++i) small.push_back(1e-3 * i);
  for (const ApproxErrorPoint& pt : approx_error_profile(CentrifugalSpec(3, 1), p, small)) {
    CHECK(pt.status == PointStatus::ok);
    CHECK(pt.relative_error <= 1e-3);
  }
  for (const ApproxErrorPoint& pt : approx_error_profile(CentrifugalSpec(3, 0), p, small))
    CHECK(pt.relative_error == 0.0);

  const std::vector<double> far{5.0};
  CHECK(approx_error_profile(CentrifugalSpec(3, 1), p, far)[0].relative_error > 0.5);

  const PotentialParams q2(0.1, 0.0, 1.0, 2.0);
  const std::vector<double> at_pole{std::log(2.0)};
  CHECK(approx_error_profile(CentrifugalSpec(3, 1), q2, at_pole)[0].status == PointStatus::pole);
}

TEST_CASE("Woods-Saxon reading of q = -1") {
  const WoodsSaxonForm unit = to_woods_saxon(PotentialParams(1.0, 0.0, 1.0, 5.0));
  CHECK(unit.params.q() == -1.0);
  CHECK(unit.vector(0.0) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(std::abs(unit.vector(80.0)) < 1e-15);

  const PotentialParams p(0.3, 0.2, 0.7, -1.0);
  const WoodsSaxonForm ws = to_woods_saxon(p);
  CHECK(ws.vector(1.3) == doctest::Approx(eval_vector(p, 1.3)).epsilon(1e-14));
  CHECK(ws.scalar(1.3) == doctest::Approx(eval_scalar(p, 1.3)).epsilon(1e-14));
}

TEST_CASE("uniform rescaling leaves V/m0 invariant") {
  const PotentialParams p(0.25, 0.1, 0.5, 1.5, 1.0);
  for (double c : {0.1, 3.0, 17.0}) {
    const PotentialParams s(c * 0.25, c * 0.1, c * 0.5, 1.5, c);
    for (double r : {0.4, 2.0, 9.0}) {
      CHECK(eval_vector(s, r / c) / s.m0() == doctest::Approx(eval_vector(p, r) / p.m0()).epsilon(1e-13));
      CHECK(eval_scalar(s, r / c) / s.m0() == doctest::Approx(eval_scalar(p, r) / p.m0()).epsilon(1e-13));
    }
  }
}
