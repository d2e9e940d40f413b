#pragma once

#include <functional>
#include <span>

namespace kgh::quad {

struct Result {
  double value = 0;
  double error_estimate = 0;
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod (61 points). Throws QuadratureFailure when the error
// estimate exceeds rel_tol * |value| (plus a tiny absolute floor).
Result gauss_kronrod(const Integrand& f, double a, double b, double rel_tol = 1e-10);

// Adaptive Simpson with Richardson correction; an independent rule for
// cross-checking gauss_kronrod.
Result adaptive_simpson(const Integrand& f, double a, double b, double rel_tol = 1e-10,
                        int max_depth = 48);

enum class Rule { gauss_kronrod, simpson };

// Sum over consecutive intervals of breaks. The error estimates are summed and
// checked once against rel_tol * |total|; throws QuadratureFailure.
Result integrate_piecewise(const Integrand& f, std::span<const double> breaks, Rule rule,
                           double rel_tol = 1e-10);

} // namespace kgh::quad
