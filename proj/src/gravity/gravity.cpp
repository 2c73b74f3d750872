#include "nhlab/gravity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nhlab/ode.hpp"
#include "nhlab/quadrature.hpp"

namespace nhlab::gravity {

namespace {

void require_3d(const Vector& x, const char* where) {
  if (x.size() != 3) throw InvalidArgument(std::string(where) + ": gravity is fixed to d = 3");
}

// Gamma^i_tt = -a^i
Vector connection_field(const SpacetimeKind& kind, const PointSource& src, double t,
                        const Vector& x) {
  return -point_acceleration(kind, src, t, x);
}

}  // namespace

PointSource PointSource::fixed(double mass, Vector at, double G) {
  return {mass, G, [at = std::move(at)](double) { return at; }};
}

Vector point_acceleration(const SpacetimeKind& kind, const PointSource& src, double t,
                          const Vector& x) {
  require_3d(x, "point_acceleration");
  if (!(src.mass > 0.0) || !(src.G > 0.0))
    throw InvalidArgument("point_acceleration: M and G must be positive");
  require_beltrami_domain(kind, t, "point_acceleration");
  const double s = sigma(kind, t);
  if (s <= 0.0) throw DomainError("point_acceleration: sigma(t) <= 0");
  const Vector rel = x - src.position(t);
  const double r = rel.norm();
  if (r == 0.0) throw CollisionError("point_acceleration: test particle at the source");
  return -(src.G * src.mass / std::sqrt(s)) * rel / (r * r * r);
}

Orbit integrate_orbit(const SpacetimeKind& kind, const PointSource& src, const OrbitState& initial,
                      double t_end, int steps) {
  if (steps < 1) throw InvalidArgument("integrate_orbit: steps must be positive");
  require_3d(initial.x, "integrate_orbit");
  require_3d(initial.v, "integrate_orbit");
  require_beltrami_domain(kind, initial.t, "integrate_orbit");
  auto rhs = [&](double t, const Vector& y) {
    Vector out(6);
    out.head(3) = y.tail(3);
    out.tail(3) = point_acceleration(kind, src, t, y.head(3));
    return out;
  };
  Orbit orbit;
  Vector y(6);
  y << initial.x, initial.v;
  const double h = (t_end - initial.t) / steps;
  double last_ok = initial.t;
  rk4_integrate<double>(
      rhs, initial.t, y, t_end, steps,
      [&](double t, const Vector& yy) {
        orbit.times.push_back(t);
        orbit.positions.push_back(yy.head(3));
        orbit.velocities.push_back(yy.tail(3));
      },
      [&](double t, const Vector&) {
        if (!in_beltrami_domain(kind, t + h))
          throw DomainExit("integrate_orbit: left the Beltrami chart", last_ok);
        last_ok = t;
      });
  return orbit;
}

Orbit integrate_orbit(const AnomalousConnection& conn, const PointSource& src,
                      const OrbitState& initial, double t_end, int steps) {
  return integrate_orbit(conn.kind(), src, initial, t_end, steps);
}

double law_residual(const SpacetimeKind& kind, const PointSource& src, const Orbit& orbit) {
  const std::size_t n = orbit.size();
  if (n < 5) throw InvalidArgument("law_residual: needs five samples");
  double worst = 0.0;
  for (std::size_t k = 2; k + 2 < n; ++k) {
    std::vector<double> ts(orbit.times.begin() + static_cast<long>(k) - 2,
                           orbit.times.begin() + static_cast<long>(k) + 3);
    const auto w = fd_weights(orbit.times[k], ts, 2);
    Vector acc = Vector::Zero(3);
    for (int j = 0; j < 5; ++j) acc += w[static_cast<std::size_t>(j)] * orbit.positions[k - 2 + j];
    const Vector law = point_acceleration(kind, src, orbit.times[k], orbit.positions[k]);
    worst = std::max(worst, (acc - law).norm());
  }
  return worst;
}

double covariance_check(const SpacetimeKind& kind, const NHTransform& g, const PointSource& src,
                        const Orbit& orbit) {
  Orbit image;
  std::vector<std::pair<double, Vector>> source_image;
  for (std::size_t k = 0; k < orbit.size(); ++k) {
    const double t = orbit.times[k];
    const Event e = apply(kind, g, beltrami_event(t, orbit.positions[k]));
    const Event s = apply(kind, g, beltrami_event(t, src.position(t)));
    image.times.push_back(e.time);
    image.positions.push_back(e.space);
    source_image.emplace_back(s.time, s.space);
  }
  if (image.times.back() < image.times.front()) {
    std::reverse(image.times.begin(), image.times.end());
    std::reverse(image.positions.begin(), image.positions.end());
    std::reverse(source_image.begin(), source_image.end());
  }
  PointSource moved{src.mass, src.G, [&source_image](double tp) {
                      // exact sample lookup: the residual only queries sample instants
                      auto it = std::lower_bound(
                          source_image.begin(), source_image.end(), tp,
                          [](const auto& p, double v) { return p.first < v; });
                      if (it == source_image.end() || it->first != tp)
                        throw InvalidArgument("covariance_check: source queried off-grid");
                      return it->second;
                    }};
  return law_residual(kind, moved, image);
}

FluxResult divergence_check(const SpacetimeKind& kind, const PointSource& src, double t,
                            double radius, int quad_order, const Vector& offset) {
  require_3d(offset, "divergence_check");
  if (!(radius > offset.norm())) throw InvalidArgument("divergence_check: source outside sphere");
  const auto rule = gauss_legendre(quad_order);
  const auto phi_rule = gauss_legendre(2 * quad_order);
  const Vector centre = src.position(t) + offset;
  const double pi = std::numbers::pi;
  double flux = 0.0;
  for (std::size_t a = 0; a < rule.nodes.size(); ++a) {
    const double ct = rule.nodes[a], st = std::sqrt(1.0 - ct * ct);
    for (std::size_t b = 0; b < phi_rule.nodes.size(); ++b) {
      const double phi = pi * (phi_rule.nodes[b] + 1.0);
      Vector n(3);
      n << st * std::cos(phi), st * std::sin(phi), ct;
      const Vector f = connection_field(kind, src, t, centre + radius * n);
      // dA = r^2 d(cos theta) d phi, d phi = pi d xi
      flux += rule.weights[a] * phi_rule.weights[b] * pi * radius * radius * f.dot(n);
    }
  }
  const double s = sigma(kind, t);
  return {flux, 4.0 * pi * src.G * src.mass / std::sqrt(s)};
}

namespace {

Vector partial(const SpacetimeKind& kind, const PointSource& src, double t, const Vector& x,
               int axis, double h) {
  auto f = [&](double dx) {
    Vector y = x;
    y[axis] += dx;
    return connection_field(kind, src, t, y);
  };
  return (-f(2 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2 * h)) / (12.0 * h);
}

}  // namespace

double field_divergence(const SpacetimeKind& kind, const PointSource& src, double t,
                        const Vector& x, double h) {
  double div = 0.0;
  for (int i = 0; i < 3; ++i) div += partial(kind, src, t, x, i, h)[i];
  return div;
}

Vector field_curl(const SpacetimeKind& kind, const PointSource& src, double t, const Vector& x,
                  double h) {
  const Vector dx = partial(kind, src, t, x, 0, h), dy = partial(kind, src, t, x, 1, h),
               dz = partial(kind, src, t, x, 2, h);
  Vector c(3);
  c << dy[2] - dz[1], dz[0] - dx[2], dx[1] - dy[0];
  return c;
}

}  // namespace nhlab::gravity
