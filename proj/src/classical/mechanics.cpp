#include "nhlab/classical/mechanics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/QR>

#include "nhlab/ode.hpp"

namespace nhlab::classical {

namespace {

double positive_sigma(const SpacetimeKind& kind, double t, const char* where) {
  require_beltrami_domain(kind, t, where);
  const double s = sigma(kind, t);
  if (s <= 0.0) throw DomainError(std::string(where) + ": sigma(t) <= 0");
  return s;
}

void require_positive_mass(double m) {
  if (!(m > 0.0)) throw InvalidArgument("mass must be positive");
}

// Endpoint term of the total-derivative identity: +- m nu^2 t x^2 / 2 sigma.
double gauge_term(const SpacetimeKind& kind, double m, double t, const Vector& x) {
  return kind.signed_nu2() * m * t * x.squaredNorm() / (2.0 * sigma(kind, t));
}

}  // namespace

double lagrangian(LagrangianForm form, const SpacetimeKind& kind, double m, double t,
                  const Vector& x, const Vector& xdot) {
  require_positive_mass(m);
  if (x.size() != xdot.size()) throw InvalidArgument("lagrangian: size mismatch");
  const double sn2 = kind.signed_nu2();
  switch (form) {
    case LagrangianForm::NHBeltrami: {
      const double s = positive_sigma(kind, t, "lagrangian");
      const double drift = (x - t * xdot).squaredNorm();
      return 0.5 * m / s * (xdot.squaredNorm() - sn2 * drift + 2.0 * sn2 * x.squaredNorm() / s);
    }
    case LagrangianForm::FreeGalilei:
      return 0.5 * m * xdot.squaredNorm();
    case LagrangianForm::StaticOscillator:
      return 0.5 * m * (xdot.squaredNorm() + sn2 * x.squaredNorm());
  }
  return 0.0;
}

LegendreResult legendre(const SpacetimeKind& kind, double m, double t, const Vector& x,
                        const Vector& xdot) {
  require_positive_mass(m);
  const double s = positive_sigma(kind, t, "legendre");
  LegendreResult r;
  r.state.t = t;
  r.state.x = x;
  r.state.p = m * (xdot + kind.signed_nu2() * t * x / s);
  r.hamiltonian = hamiltonian(kind, m, r.state);
  return r;
}

double hamiltonian(const SpacetimeKind& kind, double m, const PhaseState& st) {
  require_positive_mass(m);
  const double s = positive_sigma(kind, st.t, "hamiltonian");
  const double sn2 = kind.signed_nu2();
  return st.p.squaredNorm() / (2.0 * m) - sn2 * st.t * st.x.dot(st.p) / s -
         sn2 * m * st.x.squaredNorm() / (2.0 * s * s);
}

Vector velocity(const SpacetimeKind& kind, double m, const PhaseState& st) {
  const double s = positive_sigma(kind, st.t, "velocity");
  return st.p / m - kind.signed_nu2() * st.t * st.x / s;
}

void validate(const SpacetimeKind& kind, const PathSample& path) {
  if (path.times.size() != path.positions.size())
    throw InvalidArgument("PathSample: times and positions differ in length");
  if (path.times.size() < 2) throw InvalidArgument("PathSample: needs at least two samples");
  const auto d = path.positions.front().size();
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (path.positions[k].size() != d) throw InvalidArgument("PathSample: ragged positions");
    if (k > 0 && !(path.times[k] > path.times[k - 1]))
      throw InvalidArgument("PathSample: times must increase strictly");
    if (path.chart == Chart::Beltrami && !in_beltrami_domain(kind, path.times[k]))
      throw DomainError("PathSample: time outside the Beltrami chart");
  }
}

std::vector<Vector> path_velocities(const PathSample& path) {
  const std::size_t n = path.size();
  if (n < 3) throw InvalidArgument("path_velocities: needs at least three samples");
  const auto& t = path.times;
  const auto& x = path.positions;
  std::vector<Vector> v(n);
  // Three-point Lagrange derivative, valid for non-uniform spacing.
  auto lagrange = [&](std::size_t i0, std::size_t at) {
    const double a = t[i0], b = t[i0 + 1], c = t[i0 + 2], s = t[at];
    const double wa = (2 * s - b - c) / ((a - b) * (a - c));
    const double wb = (2 * s - a - c) / ((b - a) * (b - c));
    const double wc = (2 * s - a - b) / ((c - a) * (c - b));
    return Vector(wa * x[i0] + wb * x[i0 + 1] + wc * x[i0 + 2]);
  };
  v[0] = lagrange(0, 0);
  for (std::size_t k = 1; k + 1 < n; ++k) v[k] = lagrange(k - 1, k);
  v[n - 1] = lagrange(n - 3, n - 1);
  return v;
}

PathSample integrate_eom(const SpacetimeKind& kind, double m, const PhaseState& initial,
                         double t_end, int steps) {
  require_positive_mass(m);
  if (steps < 1) throw InvalidArgument("integrate_eom: steps must be positive");
  if (initial.x.size() != initial.p.size())
    throw InvalidArgument("integrate_eom: x and p differ in size");
  require_beltrami_domain(kind, initial.t, "integrate_eom");
  const auto d = initial.x.size();
  const double sn2 = kind.signed_nu2();

  auto rhs = [&](double t, const Vector& y) {
    const double s = sigma(kind, t);
    const Vector x = y.head(d), p = y.tail(d);
    Vector out(2 * d);
    out.head(d) = p / m - sn2 * t * x / s;
    out.tail(d) = sn2 * t * p / s + sn2 * m * x / (s * s);
    return out;
  };

  PathSample path;
  path.chart = Chart::Beltrami;
  Vector y(2 * d);
  y << initial.x, initial.p;
  double last_ok = initial.t;
  rk4_integrate<double>(
      rhs, initial.t, y, t_end, steps,
      [&](double t, const Vector& yy) {
        path.times.push_back(t);
        path.positions.push_back(yy.head(d));
      },
      [&](double t, const Vector&) {
        const double h = (t_end - initial.t) / steps;
        if (!in_beltrami_domain(kind, t + h))
          throw DomainExit("integrate_eom: left the Beltrami chart", last_ok);
        last_ok = t;
      });
  return path;
}

PathSample integrate_static_oscillator(const SpacetimeKind& kind, double tau0,
                                       const Vector& q0, const Vector& qdot0, double tau_end,
                                       int steps) {
  if (steps < 1) throw InvalidArgument("integrate_static_oscillator: steps must be positive");
  const auto d = q0.size();
  const double sn2 = kind.signed_nu2();
  auto rhs = [&](double, const Vector& y) {
    Vector out(2 * d);
    out.head(d) = y.tail(d);
    out.tail(d) = sn2 * y.head(d);
    return out;
  };
  PathSample path;
  path.chart = Chart::Static;
  Vector y(2 * d);
  y << q0, qdot0;
  rk4_integrate<double>(
      rhs, tau0, y, tau_end, steps,
      [&](double t, const Vector& yy) {
        path.times.push_back(t);
        path.positions.push_back(yy.head(d));
      },
      [](double, const Vector&) {});
  return path;
}

PathSample static_to_beltrami(const SpacetimeKind& kind, const PathSample& path) {
  if (path.chart != Chart::Static) throw ChartMismatch("path is not in the static chart");
  PathSample out;
  out.chart = Chart::Beltrami;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const auto e = nhlab::static_to_beltrami(kind, static_event(path.times[k], path.positions[k]));
    out.times.push_back(e.time);
    out.positions.push_back(e.space);
  }
  return out;
}

double action_of_path(LagrangianForm form, const SpacetimeKind& kind, double m,
                      const PathSample& path) {
  if (path.size() < 16) throw InvalidArgument("action_of_path: needs at least 16 samples");
  const Chart want = form == LagrangianForm::StaticOscillator ? Chart::Static : Chart::Beltrami;
  if (path.chart != want) throw ChartMismatch("action_of_path: path chart does not match form");
  validate(kind, path);
  const auto v = path_velocities(path);
  double s = 0.0;
  double prev = lagrangian(form, kind, m, path.times[0], path.positions[0], v[0]);
  for (std::size_t k = 1; k < path.size(); ++k) {
    const double cur = lagrangian(form, kind, m, path.times[k], path.positions[k], v[k]);
    s += 0.5 * (prev + cur) * (path.times[k] - path.times[k - 1]);
    prev = cur;
  }
  return s;
}

double total_derivative_check(const SpacetimeKind& kind, double m, const PathSample& path) {
  const double s_nh = action_of_path(LagrangianForm::NHBeltrami, kind, m, path);
  const double s_free = action_of_path(LagrangianForm::FreeGalilei, kind, m, path);
  const double boundary = gauge_term(kind, m, path.times.back(), path.positions.back()) -
                          gauge_term(kind, m, path.times.front(), path.positions.front());
  return std::abs(s_nh - s_free - boundary);
}

double translation_shift_check(const SpacetimeKind& kind, double m, const Vector& a,
                               const PathSample& path) {
  if (a.size() != path.dim()) throw InvalidArgument("translation_shift_check: size mismatch");
  PathSample shifted = path;
  for (auto& x : shifted.positions) x -= a;
  const double ds = action_of_path(LagrangianForm::NHBeltrami, kind, m, shifted) -
                    action_of_path(LagrangianForm::NHBeltrami, kind, m, path);
  const double sn2 = kind.signed_nu2();
  auto term = [&](double t, const Vector& x) {
    const double s = sigma(kind, t);
    return -sn2 * m * t * a.dot(x) / s + sn2 * m * t * a.squaredNorm() / (2.0 * s);
  };
  const double boundary = term(path.times.back(), path.positions.back()) -
                          term(path.times.front(), path.positions.front());
  return std::abs(ds - boundary);
}

double line_fit_residual(const PathSample& path) {
  const std::size_t n = path.size();
  if (n < 2) throw InvalidArgument("line_fit_residual: needs two samples");
  Eigen::MatrixXd design(static_cast<Eigen::Index>(n), 2);
  Eigen::MatrixXd rhs(static_cast<Eigen::Index>(n), path.dim());
  // centre time for conditioning
  double mean = 0.0;
  for (double t : path.times) mean += t;
  mean /= static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto r = static_cast<Eigen::Index>(k);
    design(r, 0) = 1.0;
    design(r, 1) = path.times[k] - mean;
    rhs.row(r) = path.positions[k].transpose();
  }
  const Eigen::MatrixXd coef = design.colPivHouseholderQr().solve(rhs);
  return (design * coef - rhs).cwiseAbs().maxCoeff();
}

}  // namespace nhlab::classical
