#include "kgh/quadrature.hpp"

#include "kgh/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <string>

namespace kgh::quad {

namespace {

constexpr double kAbsFloor = 1e-300;

struct Simpson {
  const Integrand& f;
  bool exhausted = false;

  static double rule(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  }

  double recurse(double a, double fa, double m, double fm, double b, double fb, double whole,
                 double eps, int depth, double& err) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = rule(a, m, fa, flm, fm);
    const double right = rule(m, b, fm, frm, fb);
    const double diff = left + right - whole;
    if (std::abs(diff) <= 15.0 * eps || depth <= 0) {
      if (depth <= 0 && std::abs(diff) > 15.0 * eps) exhausted = true;
      err += std::abs(diff) / 15.0;
      return left + right + diff / 15.0;
    }
    return recurse(a, fa, lm, flm, m, fm, left, eps / 2.0, depth - 1, err) +
           recurse(m, fm, rm, frm, b, fb, right, eps / 2.0, depth - 1, err);
  }
};

Result gk_raw(const Integrand& f, double a, double b, double rel_tol) {
  Result r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, rel_tol,
                                                                          &r.error_estimate);
  return r;
}

Result simpson_raw(const Integrand& f, double a, double b, double rel_tol, int max_depth,
                   bool& exhausted) {
  // A coarse first pass sets the absolute target from the integral's size.
  const int pieces = 16;
  const double h = (b - a) / pieces;
  double rough = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const double x0 = a + i * h;
    rough += h / 6.0 * (f(x0) + 4.0 * f(x0 + h / 2.0) + f(x0 + h));
  }
  const double target = rel_tol * std::abs(rough) + kAbsFloor;

  Simpson s{f};
  Result r;
  for (int i = 0; i < pieces; ++i) {
    const double x0 = a + i * h;
    const double x1 = i + 1 == pieces ? b : x0 + h;
    const double xm = 0.5 * (x0 + x1);
    const double f0 = f(x0);
    const double fm = f(xm);
    const double f1 = f(x1);
    const double whole = Simpson::rule(x0, x1, f0, fm, f1);
    r.value += s.recurse(x0, f0, xm, fm, x1, f1, whole, target / pieces, max_depth,
                         r.error_estimate);
  }
  exhausted = s.exhausted;
  return r;
}

} // namespace

Result gauss_kronrod(const Integrand& f, double a, double b, double rel_tol) {
  const Result r = gk_raw(f, a, b, rel_tol);
  if (!std::isfinite(r.value))
    throw QuadratureFailure("Gauss-Kronrod produced a non-finite value");
  if (r.error_estimate > rel_tol * std::abs(r.value) + kAbsFloor)
    throw QuadratureFailure("Gauss-Kronrod error estimate " + std::to_string(r.error_estimate) +
                            " above tolerance");
  return r;
}

Result adaptive_simpson(const Integrand& f, double a, double b, double rel_tol, int max_depth) {
  bool exhausted = false;
  const Result r = simpson_raw(f, a, b, rel_tol, max_depth, exhausted);
  if (!std::isfinite(r.value)) throw QuadratureFailure("Simpson produced a non-finite value");
  if (exhausted && r.error_estimate > rel_tol * std::abs(r.value) + kAbsFloor)
    throw QuadratureFailure("Simpson recursion depth exhausted");
  return r;
}

Result integrate_piecewise(const Integrand& f, std::span<const double> breaks, Rule rule,
                           double rel_tol) {
  Result total;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Result piece;
    if (rule == Rule::gauss_kronrod) {
      piece = gk_raw(f, breaks[i], breaks[i + 1], rel_tol);
    } else {
      bool exhausted = false;
      piece = simpson_raw(f, breaks[i], breaks[i + 1], rel_tol, 48, exhausted);
    }
    total.value += piece.value;
    total.error_estimate += piece.error_estimate;
  }
  if (!std::isfinite(total.value)) throw QuadratureFailure("piecewise integral is not finite");
  if (total.error_estimate > rel_tol * std::abs(total.value) + kAbsFloor)
    throw QuadratureFailure("piecewise error estimate " + std::to_string(total.error_estimate) +
                            " above tolerance");
  return total;
}

} // namespace kgh::quad
