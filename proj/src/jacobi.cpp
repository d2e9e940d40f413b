#include "kgh/jacobi.hpp"

#include "kgh/errors.hpp"

#include <cmath>

namespace kgh {

JacobiParams::JacobiParams(int n, double a, double b) : n(n), a(a), b(b) {
  if (n < 0) throw InvalidParams("Jacobi degree must be >= 0");
  if (!(a > -1.0) || !(b > -1.0)) throw InvalidParams("Jacobi parameters must exceed -1");
}

double jacobi(const JacobiParams& p, double x) {
  const double a = p.a;
  const double b = p.b;
  if (p.n == 0) return 1.0;
  double prev = 1.0;
  double cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
  for (int k = 2; k <= p.n; ++k) {
    const double ab = a + b;
    const double c = 2.0 * k + ab;
    const double lead = 2.0 * k * (k + ab) * (c - 2.0);
    const double mid = (c - 1.0) * (c * (c - 2.0) * x + a * a - b * b);
    const double back = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
    const double next = (mid * cur - back * prev) / lead;
    prev = cur;
    cur = next;
  }
  return cur;
}

} // namespace kgh
