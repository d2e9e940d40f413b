#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kgh/errors.hpp"
#include "kgh/nu.hpp"

#include <algorithm>
#include <cmath>

using namespace kgh::nu;

namespace {

struct RadialSymbols {
  double eps, beta1, beta2, gamma;
  double root() const { return std::sqrt(1.0 + 4.0 * (beta2 + gamma)); }
};

NUProblem radial(const RadialSymbols& r) {
  return {{0.0, 1.0, -1.0},
          {-r.eps * r.eps, r.beta1 - r.gamma + 2.0 * r.eps * r.eps,
           -(r.eps * r.eps + r.beta1 + r.beta2)},
          {1.0, -1.0}};
}

// Polar axis j with Lambda_j = l_j (l_j + j - 1).
NUProblem angular(int j, int lj, int lprev) {
  const double L = lj * (lj + j - 1.0);
  const double Lp = lprev * (lprev + j - 2.0);
  return {{1.0, 0.0, -1.0}, {L - Lp, 0.0, -L}, {0.0, -static_cast<double>(j)}};
}

bool has_k(const std::vector<NUBranch>& bs, double k) {
  return std::any_of(bs.begin(), bs.end(),
                     [&](const NUBranch& b) { return std::abs(b.k - k) <= 1e-10 * std::max(1.0, std::abs(k)); });
}

bool has_pi(const std::vector<NUBranch>& bs, double d0, double d1) {
  return std::any_of(bs.begin(), bs.end(), [&](const NUBranch& b) {
    return std::abs(b.pi.d0 - d0) <= 1e-10 && std::abs(b.pi.d1 - d1) <= 1e-10;
  });
}

const RadialSymbols kSamples[] = {
    {0.8, 1.3, -0.2, 0.0}, {0.3, 0.45, 0.1, 0.25}, {1.7, -0.4, 0.0, 2.0}, {0.05, 2.2, -0.1, 0.5}};

} // namespace

TEST_CASE("radial problem: k values and the four pi functions") {
  for (const RadialSymbols& r : kSamples) {
    const auto bs = candidate_branches(radial(r));
    CHECK(bs.size() == 4);
    const double w = r.eps * r.root();
    CHECK(has_k(bs, r.beta1 - r.gamma + w));
    CHECK(has_k(bs, r.beta1 - r.gamma - w));
    // pi = -s/2 +- [eps - (eps + root/2) s]  and  -s/2 +- [eps - (eps - root/2) s]
    const double e = r.eps, h = 0.5 * r.root();
    CHECK(has_pi(bs, e, -0.5 - (e + h)));
    CHECK(has_pi(bs, -e, -0.5 + (e + h)));
    CHECK(has_pi(bs, e, -0.5 - (e - h)));
    CHECK(has_pi(bs, -e, -0.5 + (e - h)));
    for (const NUBranch& b : bs) CHECK(relative_square_defect(radial(r), b.k) <= 1e-10);
  }
}

TEST_CASE("radial problem: physical branch, ladder and weight") {
  for (const RadialSymbols& r : kSamples) {
    const NUProblem prob = radial(r);
    const auto bs = candidate_branches(prob);
    const NUBranch b = select_physical(prob, bs);
    const double root = r.root();
    CHECK(b.k == doctest::Approx(r.beta1 - r.gamma - r.eps * root).epsilon(1e-12));
    CHECK(b.pi.d0 == doctest::Approx(r.eps));
    CHECK(b.pi.d1 == doctest::Approx(-0.5 - r.eps - 0.5 * root));
    CHECK(b.tau.slope() < 0.0);

    CHECK(lambda_ladder(b, prob.sigma, 0) == 0.0);
    for (int n = 1; n <= 4; ++n)
      CHECK(lambda_ladder(b, prob.sigma, n) ==
            doctest::Approx(n * n + (1.0 + 2.0 * r.eps + root) * n).epsilon(1e-12));

    const WeightAndPhi wp = weight_and_phi(b, prob);
    CHECK(wp.family == SigmaFamily::unit_interval);
    CHECK(wp.rho.first == doctest::Approx(2.0 * r.eps));
    CHECK(wp.rho.second == doctest::Approx(root));
    CHECK(wp.phi.first == doctest::Approx(r.eps));
    CHECK(wp.phi.second == doctest::Approx(0.5 * (1.0 + root)));
  }
}

TEST_CASE("angular problem") {
  for (int j = 2; j <= 5; ++j)
    for (int lprev = 0; lprev <= 2; ++lprev)
      for (int lj = lprev; lj <= lprev + 3; ++lj) {
        const NUProblem prob = angular(j, lj, lprev);
        const double L = lj * (lj + j - 1.0);
        const double Lp = lprev * (lprev + j - 2.0);
        const auto bs = candidate_branches(prob);
        CHECK(has_k(bs, L - Lp));
        CHECK(has_k(bs, L + std::pow((j - 2) / 2.0, 2)));

        const NUBranch b = select_physical(prob, bs);
        CHECK(std::abs(b.pi.d0) <= 1e-12);
        CHECK(b.pi.d1 == doctest::Approx(-static_cast<double>(lprev)));

        // the ladder hits the angular eigenvalue at n_j = l_j - l_{j-1}
        const int nj = lj - lprev;
        const double tilde = lprev + (j - 2) / 2.0;
        CHECK(lambda_ladder(b, prob.sigma, nj) ==
              doctest::Approx(2.0 * nj * (1.0 + tilde) + nj * (nj - 1.0)));
        CHECK(b.lambda == doctest::Approx(lambda_ladder(b, prob.sigma, nj)).epsilon(1e-10));

        const WeightAndPhi wp = weight_and_phi(b, prob);
        CHECK(wp.family == SigmaFamily::symmetric);
        CHECK(wp.phi.first == doctest::Approx(lprev / 2.0));
        CHECK(wp.phi.second == doctest::Approx(lprev / 2.0));
        CHECK(wp.rho.first == doctest::Approx(tilde));
        CHECK(wp.rho.second == doctest::Approx(tilde));
      }
}

TEST_CASE("universal Legendre axis picks -l s") {
  // last axis in D dimensions: j = D - 1 with l_{D-1} = l
  for (int dim : {3, 4, 6})
    for (int ldm2 = 0; ldm2 <= 2; ++ldm2) {
      const NUProblem prob = angular(dim - 1, ldm2 + 2, ldm2);
      const NUBranch b = select_physical(prob, candidate_branches(prob));
      CHECK(b.pi.d1 == doctest::Approx(-static_cast<double>(ldm2)));
    }
}

TEST_CASE("trivial problem sigma = s") {
  const NUProblem prob{{0.0, 1.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0}};
  const auto bs = candidate_branches(prob);
  REQUIRE(bs.size() == 2);
  for (const NUBranch& b : bs) {
    CHECK(b.k == doctest::Approx(0.0));
    CHECK(std::abs(b.pi.d1) <= 1e-14);
  }
  CHECK(has_pi(bs, 0.0, 0.0));
  CHECK(has_pi(bs, 1.0, 0.0));
}

TEST_CASE("selection survives the ODE-preserving rescaling") {
  for (const RadialSymbols& r : kSamples) {
    const NUProblem prob = radial(r);
    const NUBranch ref = select_physical(prob, candidate_branches(prob));
    for (double c : {0.25, 3.0, 40.0}) {
      NUProblem s = prob;
      s.sigma = {c * prob.sigma.c0, c * prob.sigma.c1, c * prob.sigma.c2};
      s.tau_tilde = {c * prob.tau_tilde.d0, c * prob.tau_tilde.d1};
      s.sigma_tilde = {c * c * prob.sigma_tilde.c0, c * c * prob.sigma_tilde.c1,
                       c * c * prob.sigma_tilde.c2};
      const NUBranch b = select_physical(s, candidate_branches(s));
      CHECK(b.pi.d0 == doctest::Approx(c * ref.pi.d0).epsilon(1e-10));
      CHECK(b.pi.d1 == doctest::Approx(c * ref.pi.d1).epsilon(1e-10));
      const WeightAndPhi a = weight_and_phi(ref, prob), w = weight_and_phi(b, s);
      CHECK(w.phi.first == doctest::Approx(a.phi.first));
      CHECK(w.phi.second == doctest::Approx(a.phi.second));
    }
  }
}

TEST_CASE("errors") {
  // sigma_tilde that no k can square: sigma = 1 (constant), radicand 1/4 s^2 - s_t
  const NUProblem none{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(candidate_branches(none), kgh::NoRealK);

  NUBranch up;
  up.tau = {0.0, 1.0};
  const NUBranch only[] = {up};
  CHECK_THROWS_AS(select_physical(radial(kSamples[0]), only), kgh::NoPhysicalBranch);

  const NUProblem odd{{1.0, 1.0, 1.0}, {0.0, 0.0, 0.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(weight_and_phi(up, odd), kgh::UnsupportedSigma);
}
