#pragma once

// Point-source gravity on NH space-times (d = 3):
//   d^2 x/dt^2 = -(G M / sigma(t)^{1/2}) (x - X)/|x - X|^3.
// The anomaly parameter C never enters; the overloads taking a connection
// only read its kind.

#include <functional>
#include <vector>

#include "nhlab/anomalous.hpp"
#include "nhlab/geometry.hpp"
#include "nhlab/group.hpp"

namespace nhlab::gravity {

using Vector = Vec<double>;

struct PointSource {
  double mass = 1.0;
  double G = 1.0;
  std::function<Vector(double)> position;  // X(t), Beltrami chart

  static PointSource fixed(double mass, Vector at, double G = 1.0);
};

/// Throws CollisionError when x = X(t), DomainError outside the chart.
Vector point_acceleration(const SpacetimeKind& kind, const PointSource& src, double t,
                          const Vector& x);

struct OrbitState {
  double t = 0.0;
  Vector x;
  Vector v;
};

struct Orbit {
  std::vector<double> times;
  std::vector<Vector> positions;
  std::vector<Vector> velocities;
  std::size_t size() const { return times.size(); }
};

/// RK4 in t. DomainExit when the chart edge is reached, CollisionError on a hit.
Orbit integrate_orbit(const SpacetimeKind& kind, const PointSource& src, const OrbitState& initial,
                      double t_end, int steps);
Orbit integrate_orbit(const AnomalousConnection& conn, const PointSource& src,
                      const OrbitState& initial, double t_end, int steps);

/// Max over interior samples of the Euclidean norm |d^2x/dt^2 - a(t, x)|, the second derivative
/// taken with 5-point finite-difference weights on the (possibly non-uniform) t grid.
double law_residual(const SpacetimeKind& kind, const PointSource& src, const Orbit& orbit);

/// Maps the orbit and the source world line by g and returns law_residual of the image.
/// t' depends on t only, so the image source is evaluated at the same sample instants.
double covariance_check(const SpacetimeKind& kind, const NHTransform& g, const PointSource& src,
                        const Orbit& orbit);

struct FluxResult {
  double flux;
  double expected;  // 4 pi G M / sigma(t)^{1/2}
};

/// Flux of Gamma^i_tt = -a^i through a sphere of the given radius around
/// X(t) + offset (|offset| < radius), product Gauss-Legendre rule in (cos theta, phi).
FluxResult divergence_check(const SpacetimeKind& kind, const PointSource& src, double t,
                            double radius, int quad_order, const Vector& offset = Vector::Zero(3));

/// Pointwise divergence and curl of Gamma^i_tt by 5-point central differences.
double field_divergence(const SpacetimeKind& kind, const PointSource& src, double t,
                        const Vector& x, double h = 1e-3);
Vector field_curl(const SpacetimeKind& kind, const PointSource& src, double t, const Vector& x,
                  double h = 1e-3);

}  // namespace nhlab::gravity
