#include "nhlab/quantum/states.hpp"

#include <cmath>
#include <numbers>

namespace nhlab::quantum {

namespace {

Point or_zero(const Point& v, int d, const char* what) {
  if (v.size() == 0) return Point::Zero(d);
  if (v.size() != d) throw InvalidArgument(std::string("analytic_state: ") + what + " has wrong dimension");
  return v;
}

}  // namespace

Complex gaussian_packet(const Point& x, double t, const Point& x0, const Point& p0, double w,
                        double hbar, double mass) {
  const double d = static_cast<double>(x.size());
  const Complex spread(1.0, hbar * t / (2.0 * mass * w * w));
  const Point rel = x - x0 - p0 * (t / mass);
  const Complex expo = -rel.squaredNorm() / (4.0 * w * w * spread) +
                       Complex(0.0, (p0.dot(x - x0) - p0.squaredNorm() * t / (2.0 * mass)) / hbar);
  return std::pow(2.0 * std::numbers::pi * w * w, -d / 4.0) * std::pow(spread, -d / 2.0) *
         std::exp(expo);
}

Complex plane_wave(const Point& x, double t, const Point& p, double hbar, double mass) {
  return std::polar(1.0, (p.dot(x) - p.squaredNorm() * t / (2.0 * mass)) / hbar);
}

GridState analytic_state(AnalyticState which, const AnalyticParams& p) {
  validate(p.grid);
  const int d = p.grid.dim;
  const Point mom = or_zero(p.momentum, d, "momentum");
  const Point x0 = or_zero(p.center, d, "center");
  switch (which) {
    case AnalyticState::PlaneWaveFree:
      require_beltrami_domain(p.kind, p.time, "analytic_state");
      return sample(Chart::Beltrami, p.time, p.grid, p.hbar, p.mass,
                    [&](const Point& x) { return plane_wave(x, p.time, mom, p.hbar, p.mass); });
    case AnalyticState::OscGroundANH: {
      if (!p.kind.is_anh()) throw DomainError("analytic_state: the oscillator ground state needs an ANH kind");
      const double nu = p.kind.nu();
      return sample(Chart::Static, p.time, p.grid, p.hbar, p.mass, [&](const Point& q) {
        return std::exp(Complex(-p.mass * nu * q.squaredNorm() / (2.0 * p.hbar),
                                -d * nu * p.time / 2.0));
      });
    }
    case AnalyticState::GaussianPacket:
      require_beltrami_domain(p.kind, p.time, "analytic_state");
      if (!(p.width > 0.0)) throw DomainError("analytic_state: packet width must be positive");
      return sample(Chart::Beltrami, p.time, p.grid, p.hbar, p.mass, [&](const Point& x) {
        return gaussian_packet(x, p.time, x0, mom, p.width, p.hbar, p.mass);
      });
  }
  throw InvalidArgument("analytic_state: unknown state");
}

}  // namespace nhlab::quantum
