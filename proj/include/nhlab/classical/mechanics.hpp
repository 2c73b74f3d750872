#pragma once

// Point-particle mechanics on NH space-times: the three equivalent
// Lagrangians, the Legendre map, canonical equations and action quadrature.

#include <vector>

#include "nhlab/geometry.hpp"

namespace nhlab::classical {

using Vector = Vec<double>;

enum class LagrangianForm {
  NHBeltrami,        // (m/2 sigma)[xdot^2 -+ nu^2 (x - t xdot)^2 +- 2 nu^2 x^2/sigma]
  FreeGalilei,       // m xdot^2 / 2
  StaticOscillator,  // m (qdot^2 +- nu^2 q^2)/2, time is tau
};

double lagrangian(LagrangianForm form, const SpacetimeKind& kind, double m, double t,
                  const Vector& x, const Vector& xdot);

struct PhaseState {
  double t = 0.0;
  Vector x;
  Vector p;
};

struct LegendreResult {
  PhaseState state;
  double hamiltonian = 0.0;
};

/// p = m [xdot +- nu^2 t x / sigma] and the closed-form H.
LegendreResult legendre(const SpacetimeKind& kind, double m, double t, const Vector& x,
                        const Vector& xdot);

/// H = p^2/2m -+ nu^2 t x.p/sigma -+ m nu^2 x^2 / 2 sigma^2.
double hamiltonian(const SpacetimeKind& kind, double m, const PhaseState& s);

/// xdot = p/m -+ nu^2 t x / sigma (inverse Legendre map).
Vector velocity(const SpacetimeKind& kind, double m, const PhaseState& s);

struct PathSample {
  Chart chart = Chart::Beltrami;
  std::vector<double> times;
  std::vector<Vector> positions;

  int dim() const { return positions.empty() ? 0 : static_cast<int>(positions.front().size()); }
  std::size_t size() const { return times.size(); }
};

/// Uniform-time sampling of x(t) on [t1, t2]; `n` samples including both ends.
template <typename F>
PathSample sample_path(Chart chart, double t1, double t2, int n, F&& x_of_t) {
  PathSample p;
  p.chart = chart;
  for (int k = 0; k < n; ++k) {
    const double t = t1 + (t2 - t1) * k / (n - 1);
    p.times.push_back(t);
    p.positions.push_back(x_of_t(t));
  }
  return p;
}

/// Checks monotone times, matching dimensions and (NH Beltrami) the chart domain.
void validate(const SpacetimeKind& kind, const PathSample& path);

/// Central differences inside, second-order one-sided differences at the ends.
std::vector<Vector> path_velocities(const PathSample& path);

/// RK4 on the canonical equations. Throws DomainExit when t_end is outside
/// the chart (reported time is the last in-domain step).
PathSample integrate_eom(const SpacetimeKind& kind, double m, const PhaseState& initial,
                         double t_end, int steps);

/// RK4 on q'' = +- nu^2 q in proper time; the result is in the static chart.
PathSample integrate_static_oscillator(const SpacetimeKind& kind, double tau0,
                                       const Vector& q0, const Vector& qdot0, double tau_end,
                                       int steps);

/// Maps a static-chart path to the Beltrami chart point by point.
PathSample static_to_beltrami(const SpacetimeKind& kind, const PathSample& path);

/// Trapezoid quadrature of the chosen Lagrangian along the path (>= 16 samples).
double action_of_path(LagrangianForm form, const SpacetimeKind& kind, double m,
                      const PathSample& path);

/// | S_NH - S_free - [+- m nu^2 t x^2 / 2 sigma]_{t1}^{t2} |
double total_derivative_check(const SpacetimeKind& kind, double m, const PathSample& path);

/// | S[x - a] - S[x] - [-+ m nu^2 t a.x/sigma +- m nu^2 t a^2 / 2 sigma]_{t1}^{t2} |
double translation_shift_check(const SpacetimeKind& kind, double m, const Vector& a,
                               const PathSample& path);

/// Largest distance of the samples from their least-squares straight line x = x0 + v t.
double line_fit_residual(const PathSample& path);

}  // namespace nhlab::classical
