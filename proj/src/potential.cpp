#include "kgh/potential.hpp"

#include "kgh/errors.hpp"

#include <cmath>
#include <limits>

namespace kgh {

namespace {

constexpr double kPoleTolerance = 1e-12;

void require_positive_radius(double r) {
  if (!(r > 0.0)) throw DomainError("radius must be > 0");
}

} // namespace

PotentialParams::PotentialParams(double v0, double s0, double alpha, double q, double m0)
    : v0_(v0), s0_(s0), alpha_(alpha), q_(q), m0_(m0) {
  if (!std::isfinite(v0) || !std::isfinite(s0)) throw InvalidParams("couplings must be finite");
  if (!(q != 0.0) || !std::isfinite(q)) throw InvalidParams("deformation q must be finite and nonzero");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidParams("alpha must be > 0");
  if (!(m0 > 0.0) || !std::isfinite(m0)) throw InvalidParams("m0 must be > 0");
}

double PotentialParams::pole_radius() const {
  return q_ > 0.0 ? std::log(q_) / alpha_ : 0.0;
}

CentrifugalSpec::CentrifugalSpec(int dim, int l) : dim(dim), l(l) {
  if (dim < 1) throw InvalidQuantumNumbers("dimension must be >= 1");
  if (l < 0) throw InvalidQuantumNumbers("l must be >= 0");
}

double hulthen_shape(const PotentialParams& p, double r) {
  require_positive_radius(r);
  const double e = std::exp(-p.alpha() * r);
  const double den = 1.0 - p.q() * e;
  if (std::abs(den) < kPoleTolerance) throw PoleAtRadius(r, std::abs(den));
  return e / den;
}

double eval_vector(const PotentialParams& p, double r) { return -p.v0() * hulthen_shape(p, r); }

double eval_scalar(const PotentialParams& p, double r) { return -p.s0() * hulthen_shape(p, r); }

double centrifugal_exact(const CentrifugalSpec& c, double r) {
  require_positive_radius(r);
  return static_cast<double>(c.factor()) / (4.0 * r * r);
}

double centrifugal_approx(const CentrifugalSpec& c, const PotentialParams& p, double r) {
  require_positive_radius(r);
  const double e = std::exp(-p.alpha() * r);
  const double den = 1.0 - p.q() * e;
  if (std::abs(den) < kPoleTolerance) throw PoleAtRadius(r, std::abs(den));
  const double a = p.alpha();
  return static_cast<double>(c.factor()) / 4.0 * a * a * e / (den * den);
}

std::vector<ApproxErrorPoint> approx_error_profile(const CentrifugalSpec& c,
                                                   const PotentialParams& p,
                                                   std::span<const double> radii) {
  std::vector<ApproxErrorPoint> out;
  out.reserve(radii.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (double r : radii) {
    ApproxErrorPoint pt{r, nan, nan, nan, PointStatus::ok};
    try {
      pt.exact = centrifugal_exact(c, r);
      pt.approx = centrifugal_approx(c, p, r);
      if (pt.exact == 0.0) {
        pt.relative_error = pt.approx == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
      } else {
        pt.relative_error = std::abs(pt.approx - pt.exact) / std::abs(pt.exact);
      }
      if (!std::isfinite(pt.exact) || !std::isfinite(pt.approx) ||
          !std::isfinite(pt.relative_error))
        pt.status = PointStatus::non_finite;
    } catch (const PoleAtRadius&) {
      pt.status = PointStatus::pole;
    }
    out.push_back(pt);
  }
  return out;
}

double WoodsSaxonForm::vector(double r) const {
  return vector_shift + params.v0() / (1.0 + std::exp(-params.alpha() * r));
}

double WoodsSaxonForm::scalar(double r) const {
  return scalar_shift + params.s0() / (1.0 + std::exp(-params.alpha() * r));
}

WoodsSaxonForm to_woods_saxon(const PotentialParams& p) {
  return {p.with_q(-1.0), -p.v0(), -p.s0()};
}

} // namespace kgh
