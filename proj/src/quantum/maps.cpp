#include "nhlab/quantum/maps.hpp"

#include <cmath>

namespace nhlab::quantum {

namespace {

double sigma_checked(const SpacetimeKind& kind, double t, const char* where) {
  require_beltrami_domain(kind, t, where);
  const double s = sigma(kind, t);
  if (!(s > 0.0)) throw DomainError(std::string(where) + ": sigma(t) <= 0");
  return s;
}

}  // namespace

Complex gauge_factor(const SpacetimeKind& kind, double t, const Point& x, double hbar, double mass,
                     GaugePart part) {
  const double s = sigma_checked(kind, t, "gauge_factor");
  const double d = static_cast<double>(x.size());
  const double scale = part == GaugePart::PhaseOnly ? 1.0 : std::pow(s, d / 4.0);
  const double phase =
      part == GaugePart::ScaleOnly ? 0.0 : kind.signed_nu2() * mass * t * x.squaredNorm() / (2.0 * hbar * s);
  return std::polar(scale, phase);
}

GridState gauge_map(GaugeDirection dir, const SpacetimeKind& kind, const GridState& state,
                    GaugePart part) {
  validate(state);
  if (state.chart != Chart::Beltrami) throw ChartMismatch("gauge_map: state must be in the Beltrami chart");
  sigma_checked(kind, state.time, "gauge_map");
  GridState out = state;
  for (std::size_t k = 0; k < state.grid.size(); ++k) {
    const Complex f = gauge_factor(kind, state.time, state.grid.point(k), state.hbar, state.mass, part);
    auto& v = out.values[static_cast<Eigen::Index>(k)];
    v = dir == GaugeDirection::TildeToPsi ? v * f : v / f;
  }
  return out;
}

GridState duality_map(DualityDirection dir, const SpacetimeKind& kind, const GridState& state,
                      const ResampleOptions& opts, const GridSpec* out) {
  validate(state);
  const GridSpec target = out ? *out : state.grid;
  const int d = state.dim();
  if (target.dim != d) throw ResampleError("duality_map: target grid dimension differs");

  const bool forward = dir == DualityDirection::TildeToHarmonic;
  if (state.chart != (forward ? Chart::Beltrami : Chart::Static))
    throw ChartMismatch("duality_map: state chart does not match the direction");
  const double t = forward ? state.time : beltrami_time(kind, state.time);
  const double tau = forward ? proper_time(kind, t) : state.time;
  const double root = std::sqrt(sigma_checked(kind, t, "duality_map"));

  // forward: psi_h(q) = F(t, q root) psi~(t, q root); backward: psi~(x) = psi_h(x / root) / F(t, x)
  const double stretch = forward ? root : 1.0 / root;
  const CVector pulled = resample_affine(state, target, Eigen::MatrixXd::Identity(d, d) * stretch,
                                         Point::Zero(d), opts);
  GridState image{forward ? Chart::Static : Chart::Beltrami, forward ? tau : t, target, state.hbar,
                  state.mass, pulled};
  for (std::size_t k = 0; k < target.size(); ++k) {
    const Point y = target.point(k);
    const Point x = forward ? Point(y * root) : y;
    const Complex f = gauge_factor(kind, t, x, state.hbar, state.mass);
    auto& v = image.values[static_cast<Eigen::Index>(k)];
    v = forward ? v * f : v / f;
  }
  if (opts.policy == ResamplePolicy::Localized)
    require_contained(image, opts.boundary_eps, "duality_map (image)");
  return image;
}

}  // namespace nhlab::quantum
