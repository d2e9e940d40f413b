#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library's numerical kernels.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace kgh::testref {

// Rodrigues form of P_n^{(a,b)}(x), with the n-th derivative taken as a
// Cauchy contour integral (trapezoid rule on a circle, which converges
// geometrically for analytic integrands).
inline double jacobi_rodrigues(int n, double a, double b, double x, int nodes = 256) {
  using cd = std::complex<double>;
  auto w = [&](cd z) { return std::pow(1.0 - z, a + n) * std::pow(1.0 + z, b + n); };
  const double rho = 0.5 * std::min(1.0 - x, 1.0 + x);
  cd sum = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double t = 2.0 * std::numbers::pi * k / nodes;
    sum += w(x + std::polar(rho, t)) * std::polar(1.0, -n * t);
  }
  // n!/(2 pi i) \oint f/(z-x)^{n+1} dz -> n!/(N rho^n) sum f e^{-i n t}
  const double fact = std::tgamma(n + 1.0);
  const double deriv = (sum / static_cast<double>(nodes)).real() * fact / std::pow(rho, n);
  const double pref = (n % 2 == 0 ? 1.0 : -1.0) / (std::pow(2.0, n) * fact);
  return pref * std::pow(1.0 - x, -a) * std::pow(1.0 + x, -b) * deriv;
}

inline double integrate(const std::function<double(double)>& f, double lo, double hi) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 12, 1e-13);
}

class Stopwatch {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

} // namespace kgh::testref
