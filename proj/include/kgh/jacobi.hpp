#pragma once

namespace kgh {

struct JacobiParams {
  int n = 0;
  double a = 0;
  double b = 0;

  JacobiParams() = default;
  // Throws InvalidParams unless a > -1, b > -1 and n >= 0.
  JacobiParams(int n, double a, double b);
};

// P_n^{(a,b)}(x) by the ascending three-term recurrence. Arguments outside
// [-1, 1] are evaluated the same way; use jacobi_outside_interval to flag them.
double jacobi(const JacobiParams& p, double x);

inline bool jacobi_outside_interval(double x) { return x < -1.0 || x > 1.0; }

} // namespace kgh
