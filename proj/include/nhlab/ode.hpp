#pragma once

// Fixed-step classical Runge-Kutta; every trajectory in the library goes
// through here so convergence-order checks see the same scheme.

#include <Eigen/Core>

#include "nhlab/geometry.hpp"

namespace nhlab {

template <typename Scalar, typename Rhs>
Vec<Scalar> rk4_step(const Rhs& rhs, Scalar t, const Vec<Scalar>& y, Scalar h) {
  const Vec<Scalar> k1 = rhs(t, y);
  const Vec<Scalar> k2 = rhs(t + h / 2, Vec<Scalar>(y + (h / 2) * k1));
  const Vec<Scalar> k3 = rhs(t + h / 2, Vec<Scalar>(y + (h / 2) * k2));
  const Vec<Scalar> k4 = rhs(t + h, Vec<Scalar>(y + h * k3));
  return y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
}

/// Integrates y' = rhs(t, y) from t0 to t1 in `steps` equal steps.
/// `observe(t, y)` is called at the initial point and after every step; a
/// `check(t, y)` hook runs before each step and may throw.
template <typename Scalar, typename Rhs, typename Observer, typename Check>
Vec<Scalar> rk4_integrate(const Rhs& rhs, Scalar t0, Vec<Scalar> y, Scalar t1,
                          int steps, Observer&& observe, Check&& check) {
  const Scalar h = (t1 - t0) / Scalar(steps);
  observe(t0, y);
  for (int n = 0; n < steps; ++n) {
    const Scalar t = t0 + Scalar(n) * h;
    check(t, y);
    y = rk4_step<Scalar>(rhs, t, y, h);
    observe(t0 + Scalar(n + 1) * h, y);
  }
  return y;
}

}  // namespace nhlab
