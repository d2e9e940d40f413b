#pragma once

#include <span>
#include <vector>

namespace kgh {

// Vector/scalar general Hulthen-type potential
//   V(r) = -v0 e^{-alpha r} / (1 - q e^{-alpha r}),  S(r) likewise with s0.
// Natural units (hbar = c = 1); lengths are inverse energies.
class PotentialParams {
public:
  PotentialParams(double v0, double s0, double alpha, double q, double m0 = 1.0);

  double v0() const { return v0_; }
  double s0() const { return s0_; }
  double alpha() const { return alpha_; }
  double q() const { return q_; }
  double m0() const { return m0_; }
  double range() const { return 1.0 / alpha_; }

  PotentialParams with_couplings(double v0, double s0) const {
    return {v0, s0, alpha_, q_, m0_};
  }
  PotentialParams with_q(double q) const { return {v0_, s0_, alpha_, q, m0_}; }

  // Radius of the pole ln(q)/alpha for q > 0 (negative for q < 1). Zero for
  // q < 0, where the potential is regular everywhere.
  double pole_radius() const;

private:
  double v0_, s0_, alpha_, q_, m0_;
};

struct CentrifugalSpec {
  int dim = 3;
  int l = 0;

  CentrifugalSpec() = default;
  CentrifugalSpec(int dim, int l);

  // (D+2l-1)(D+2l-3), exact. Negative for D=2, l=0.
  long factor() const {
    const long k = dim + 2L * l;
    return (k - 1) * (k - 3);
  }
};

// e^{-alpha r} / (1 - q e^{-alpha r}); throws PoleAtRadius near the pole.
double hulthen_shape(const PotentialParams& p, double r);

double eval_vector(const PotentialParams& p, double r);
double eval_scalar(const PotentialParams& p, double r);

double centrifugal_exact(const CentrifugalSpec& c, double r);
// factor/4 * alpha^2 e^{-alpha r} / (1 - q e^{-alpha r})^2
double centrifugal_approx(const CentrifugalSpec& c, const PotentialParams& p, double r);

enum class PointStatus { ok, pole, non_finite };

struct ApproxErrorPoint {
  double r;
  double exact;
  double approx;
  double relative_error;
  PointStatus status;
};

std::vector<ApproxErrorPoint> approx_error_profile(const CentrifugalSpec& c,
                                                   const PotentialParams& p,
                                                   std::span<const double> radii);

// q = -1 reading of the potential as a shifted Woods-Saxon well:
//   V(r) = vector_shift + v0 / (1 + e^{-alpha r}),  vector_shift = -v0.
struct WoodsSaxonForm {
  PotentialParams params;
  double vector_shift;
  double scalar_shift;

  double vector(double r) const;
  double scalar(double r) const;
};

WoodsSaxonForm to_woods_saxon(const PotentialParams& p);

} // namespace kgh
