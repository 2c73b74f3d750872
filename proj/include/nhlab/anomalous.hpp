#pragma once

// Anomalous NH connections
//   Gamma^t_tt = (+-2 nu^2 t + 2 C nu)/sigma(t),   Gamma^i_tj = Gamma^t_tt/2 delta^i_j
// and their Galilei limit nu -> 0, C -> inf with gamma = nu C fixed
//   Gamma^t_tt = 2 gamma,  Gamma^i_tj = gamma delta^i_j.
// Since ln varsigma(t) = -2 nu tau(t) for both signs, the affine parameter is
//   lambda = (varsigma^{-C} - 1)/(2 C nu) = expm1(2 C nu tau)/(2 C nu).

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Core>
#include <Eigen/QR>

#include "nhlab/geometry.hpp"
#include "nhlab/group.hpp"
#include "nhlab/ode.hpp"

namespace nhlab {

/// Below this |C| the affine parameter uses its Taylor series in C.
inline constexpr double kSmallAnomaly = 1e-6;

template <typename Scalar = double>
class BasicAnomalousConnection {
 public:
  static BasicAnomalousConnection make(const BasicSpacetimeKind<Scalar>& kind, Scalar c) {
    if (kind.is_galilei())
      throw InvalidArgument("Galilei anomalous connections are parameterised by gamma");
    return {kind, c, kind.nu() * c};
  }
  static BasicAnomalousConnection galilei(Scalar gamma) {
    return {BasicSpacetimeKind<Scalar>::galilei(), Scalar(0), gamma};
  }

  const BasicSpacetimeKind<Scalar>& kind() const { return kind_; }
  /// Anomaly parameter C (0 for the Galilei family, which stores gamma only).
  Scalar c() const { return c_; }
  Scalar gamma() const { return gamma_; }

 private:
  BasicAnomalousConnection(BasicSpacetimeKind<Scalar> k, Scalar c, Scalar g)
      : kind_(k), c_(c), gamma_(g) {
    using std::isfinite;
    if (!isfinite(c) || !isfinite(g)) throw InvalidArgument("connection parameters must be finite");
  }
  BasicSpacetimeKind<Scalar> kind_;
  Scalar c_;
  Scalar gamma_;
};

using AnomalousConnection = BasicAnomalousConnection<double>;

template <typename Scalar>
struct ConnectionCoefficients {
  Scalar gamma_t_tt;  // Gamma^t_tt
  Scalar gamma_i_tj;  // Gamma^i_tj = Gamma^i_jt, coefficient of delta^i_j
};

template <typename Scalar>
ConnectionCoefficients<Scalar> connection_coefficients(const BasicAnomalousConnection<Scalar>& conn,
                                                       Same<Scalar> t) {
  const auto& k = conn.kind();
  if (k.is_galilei()) return {Scalar(2) * conn.gamma(), conn.gamma()};
  require_beltrami_domain(k, t, "connection_coefficients");
  const Scalar g = (Scalar(2) * k.signed_nu2() * t + Scalar(2) * conn.c() * k.nu()) / sigma(k, t);
  return {g, g / Scalar(2)};
}

/// dt/dlambda of the normalised first integral: sigma(t) varsigma(t)^C (e^{-2 gamma t} for Galilei).
template <typename Scalar>
Scalar first_integral_rate(const BasicAnomalousConnection<Scalar>& conn, Same<Scalar> t) {
  using std::exp;
  const auto& k = conn.kind();
  if (k.is_galilei()) return exp(Scalar(-2) * conn.gamma() * t);
  return sigma(k, t) * exp(Scalar(-2) * conn.c() * k.nu() * proper_time(k, t));
}

/// lambda(t) with lambda(0) = 0; tends to tau as C -> 0.
template <typename Scalar>
Scalar affine_parameter(const BasicAnomalousConnection<Scalar>& conn, Same<Scalar> t) {
  using std::abs;
  using std::expm1;
  const auto& k = conn.kind();
  const Scalar rate = Scalar(2) * conn.gamma();  // 2 C nu, or 2 gamma
  const Scalar tau = k.is_galilei() ? t : proper_time(k, t);
  const Scalar z = rate * tau;
  if (abs(conn.gamma()) == Scalar(0)) return tau;
  if (!k.is_galilei() && abs(conn.c()) < Scalar(kSmallAnomaly))
    return tau * (Scalar(1) + z / Scalar(2) + z * z / Scalar(6));
  return expm1(z) / rate;
}

template <typename Scalar = double>
struct BasicGeodesicState {
  Scalar t{0};
  Vec<Scalar> x;
  Scalar dt_dl{1};
  Vec<Scalar> dx_dl;
};

using GeodesicState = BasicGeodesicState<double>;

template <typename Scalar = double>
struct BasicGeodesicTrajectory {
  std::vector<Scalar> lambda;
  std::vector<BasicGeodesicState<Scalar>> states;
};

using GeodesicTrajectory = BasicGeodesicTrajectory<double>;

/// RK4 on d^2 t/dl^2 = -Gamma^t_tt tdot^2, d^2 x/dl^2 = -Gamma^t_tt tdot xdot.
/// Throws DomainExit once t would leave the NH chart.
template <typename Scalar>
BasicGeodesicTrajectory<Scalar> integrate_geodesic(const BasicAnomalousConnection<Scalar>& conn,
                                                   const BasicGeodesicState<Scalar>& initial,
                                                   Same<Scalar> lambda_end, int steps) {
  using V = Vec<Scalar>;
  if (steps < 1) throw InvalidArgument("integrate_geodesic: steps must be positive");
  if (!(initial.dt_dl > Scalar(0)))
    throw InvalidArgument("integrate_geodesic: dt/dlambda must be positive");
  const int d = static_cast<int>(initial.x.size());
  if (initial.dx_dl.size() != d) throw InvalidArgument("integrate_geodesic: size mismatch");
  const auto& k = conn.kind();
  require_beltrami_domain(k, initial.t, "integrate_geodesic");

  auto rhs = [&](Scalar, const V& y) {
    const Scalar g = connection_coefficients(conn, y[0]).gamma_t_tt;
    const Scalar tdot = y[d + 1];
    V out(y.size());
    out[0] = tdot;
    out.segment(1, d) = y.segment(d + 2, d);
    out[d + 1] = -g * tdot * tdot;
    out.segment(d + 2, d) = -g * tdot * y.segment(d + 2, d);
    return out;
  };

  V y(2 * d + 2);
  y << initial.t, initial.x, initial.dt_dl, initial.dx_dl;
  BasicGeodesicTrajectory<Scalar> traj;
  const Scalar h = lambda_end / Scalar(steps);
  rk4_integrate<Scalar>(
      rhs, Scalar(0), y, lambda_end, steps,
      [&](Scalar l, const V& yy) {
        traj.lambda.push_back(l);
        traj.states.push_back({yy[0], yy.segment(1, d), yy[d + 1], yy.segment(d + 2, d)});
      },
      [&](Scalar l, const V& yy) {
        // a full step at the current speed must stay inside the chart
        const Scalar probe = yy[0] + Scalar(2) * h * yy[d + 1];
        if (!in_beltrami_domain(k, yy[0]) || !in_beltrami_domain(k, probe))
          throw DomainExit("integrate_geodesic: left the Beltrami chart", double(l));
      });
  return traj;
}

/// Largest distance of the samples x(t) from their least-squares line x0 + v t.
template <typename Scalar>
Scalar straight_line_residual(const BasicGeodesicTrajectory<Scalar>& traj) {
  const auto n = static_cast<Eigen::Index>(traj.states.size());
  if (n < 3) throw InvalidArgument("straight_line_residual: needs three samples");
  const auto d = traj.states.front().x.size();
  Scalar mean(0);
  for (const auto& s : traj.states) mean += s.t;
  mean /= Scalar(n);
  Mat<Scalar> design(n, 2), rhs(n, d);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& s = traj.states[static_cast<std::size_t>(r)];
    design(r, 0) = Scalar(1);
    design(r, 1) = s.t - mean;
    rhs.row(r) = s.x.transpose();
  }
  const Mat<Scalar> coef = design.colPivHouseholderQr().solve(rhs);
  return (design * coef - rhs).cwiseAbs().maxCoeff();
}

/// max/min - 1 of (dt/dlambda)/(sigma varsigma^C) along the trajectory.
template <typename Scalar>
Scalar first_integral_spread(const BasicAnomalousConnection<Scalar>& conn,
                             const BasicGeodesicTrajectory<Scalar>& traj) {
  using std::max;
  using std::min;
  Scalar lo = std::numeric_limits<Scalar>::max(), hi = -lo;
  for (const auto& s : traj.states) {
    const Scalar q = s.dt_dl / first_integral_rate(conn, s.t);
    lo = min(lo, q);
    hi = max(hi, q);
  }
  return hi / lo - Scalar(1);
}

/// Affine-parameter length needed to go from state.t to t_target along the geodesic.
template <typename Scalar>
Scalar lambda_span(const BasicAnomalousConnection<Scalar>& conn,
                   const BasicGeodesicState<Scalar>& state, Same<Scalar> t_target) {
  const Scalar scale = state.dt_dl / first_integral_rate(conn, state.t);
  return (affine_parameter(conn, t_target) - affine_parameter(conn, state.t)) / scale;
}

template <typename Scalar>
struct LambdaTransformResult {
  Scalar slope;           // fitted d lambda'/d lambda
  Scalar expected_slope;  // varsigma(a^t)^C
  Scalar fit_residual;    // max deviation from the best affine fit
  Scalar residual() const {
    using std::abs;
    return fit_residual + abs(slope - expected_slope);
  }
};

/// Checks that lambda'(t'(t)) is affine in lambda(t) with slope varsigma(a^t)^C.
template <typename Scalar>
LambdaTransformResult<Scalar> lambda_transform_check(const BasicAnomalousConnection<Scalar>& conn,
                                                     const BasicNHTransform<Scalar>& g,
                                                     const std::vector<Scalar>& t_samples) {
  using std::exp;
  using std::pow;
  if (t_samples.size() < 3) throw InvalidArgument("lambda_transform_check: needs 3 samples");
  const auto& k = conn.kind();
  require_beltrami_domain(k, g.time_shift, "lambda_transform_check");
  const auto n = static_cast<Eigen::Index>(t_samples.size());
  Mat<Scalar> design(n, 2);
  Vec<Scalar> rhs(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Scalar t = t_samples[static_cast<std::size_t>(r)];
    const Scalar den = sigma_mix(k, g.time_shift, t);
    if (den == Scalar(0)) throw SingularTransform("lambda_transform_check: sigma(a^t, t) = 0");
    const Scalar tp = (t - g.time_shift) / den;
    design(r, 0) = affine_parameter(conn, t);
    design(r, 1) = Scalar(1);
    rhs[r] = affine_parameter(conn, tp);
  }
  const Vec<Scalar> coef = design.colPivHouseholderQr().solve(rhs);
  LambdaTransformResult<Scalar> out;
  out.slope = coef[0];
  out.expected_slope = k.is_galilei() ? exp(Scalar(-2) * conn.gamma() * g.time_shift)
                                      : pow(varsigma(k, g.time_shift), conn.c());
  out.fit_residual = (design * coef - rhs).cwiseAbs().maxCoeff();
  return out;
}

template <typename Scalar>
struct CurvatureComponents {
  Scalar r_i_ttj;  // R^i_{t t j} = -R^i_{t j t}, coefficient of delta^i_j
  Scalar r_tt;     // Ricci R_tt
};

/// R^i_ttj = +-(1 -+ C^2) nu^2/sigma^2, R_tt = -d R^i_ttj; Galilei: -gamma^2 and gamma^2 d.
template <typename Scalar>
CurvatureComponents<Scalar> curvature(const BasicAnomalousConnection<Scalar>& conn,
                                      Same<Scalar> t, int d) {
  const auto& k = conn.kind();
  Scalar r;
  if (k.is_galilei()) {
    r = -conn.gamma() * conn.gamma();
  } else {
    require_beltrami_domain(k, t, "curvature");
    const Scalar s = sigma(k, t);
    const Scalar sg = Scalar(k.sign());
    r = sg * (Scalar(1) - sg * conn.c() * conn.c()) * k.nu() * k.nu() / (s * s);
  }
  return {r, -Scalar(d) * r};
}

/// Full Riemann tensor R^rho_{sigma mu nu} (index 0 = t) from the connection
/// by central differences in t:
///   d_mu G^r_{n s} - d_nu G^r_{m s} + G^r_{m l} G^l_{n s} - G^r_{n l} G^l_{m s}.
/// Stored as a flat (d+1)^4 array, index ((r*D + s)*D + m)*D + n.
template <typename Scalar>
std::vector<Scalar> finite_difference_riemann(const BasicAnomalousConnection<Scalar>& conn,
                                              Same<Scalar> t, int d, Same<Scalar> h) {
  const int D = d + 1;
  auto gamma_at = [&](Scalar tt) {
    std::vector<Scalar> g(static_cast<std::size_t>(D * D * D), Scalar(0));
    const auto c = connection_coefficients(conn, tt);
    auto at = [&](int r, int m, int n) -> Scalar& {
      return g[static_cast<std::size_t>((r * D + m) * D + n)];
    };
    at(0, 0, 0) = c.gamma_t_tt;
    for (int i = 1; i <= d; ++i) {
      at(i, 0, i) = c.gamma_i_tj;
      at(i, i, 0) = c.gamma_i_tj;
    }
    return g;
  };
  const auto g0 = gamma_at(t), gp = gamma_at(t + h), gm = gamma_at(t - h);
  auto G = [&](const std::vector<Scalar>& g, int r, int m, int n) {
    return g[static_cast<std::size_t>((r * D + m) * D + n)];
  };
  // only d/dt is non-zero
  auto dG = [&](int mu, int r, int n, int s) {
    return mu == 0 ? (G(gp, r, n, s) - G(gm, r, n, s)) / (Scalar(2) * h) : Scalar(0);
  };
  std::vector<Scalar> riem(static_cast<std::size_t>(D * D * D * D), Scalar(0));
  for (int r = 0; r < D; ++r)
    for (int s = 0; s < D; ++s)
      for (int m = 0; m < D; ++m)
        for (int n = 0; n < D; ++n) {
          Scalar v = dG(m, r, n, s) - dG(n, r, m, s);
          for (int l = 0; l < D; ++l)
            v += G(g0, r, m, l) * G(g0, l, n, s) - G(g0, r, n, l) * G(g0, l, m, s);
          riem[static_cast<std::size_t>(((r * D + s) * D + m) * D + n)] = v;
        }
  return riem;
}

/// Compatibility defect nabla_t g_tt = d_t g_tt - 2 Gamma^t_tt g_tt with g_tt = sigma^-2;
/// equals -4 C nu / sigma^3 (and -4 gamma for Galilei), zero only when C = 0.
template <typename Scalar>
Scalar metric_compatibility_defect(const BasicAnomalousConnection<Scalar>& conn, Same<Scalar> t) {
  const auto& k = conn.kind();
  const Scalar s = sigma(k, t);
  const Scalar g_tt = Scalar(1) / (s * s);
  const Scalar dg_tt = Scalar(4) * k.signed_nu2() * t / (s * s * s);
  return dg_tt - Scalar(2) * connection_coefficients(conn, t).gamma_t_tt * g_tt;
}

template <typename Scalar>
struct ContractionPoint {
  Scalar nu;
  Scalar connection_error;  // |Gamma^t_tt - 2 gamma|
  Scalar ricci_error;       // |R_tt - gamma^2 d|
};

/// Follows nu -> 0 with C = gamma/nu on the given variant and compares with the
/// Galilei closed forms at time t.
template <typename Scalar>
std::vector<ContractionPoint<Scalar>> galilei_contraction_check(Variant variant, Scalar gamma,
                                                                const std::vector<Scalar>& nus,
                                                                Same<Scalar> t, int d) {
  using std::abs;
  if (variant == Variant::Galilei) throw InvalidArgument("contraction starts from NH or ANH");
  const auto limit = BasicAnomalousConnection<Scalar>::galilei(gamma);
  const auto gl = connection_coefficients(limit, t).gamma_t_tt;
  const auto rl = curvature(limit, t, d).r_tt;
  std::vector<ContractionPoint<Scalar>> out;
  for (Scalar nu : nus) {
    const auto conn = BasicAnomalousConnection<Scalar>::make(
        BasicSpacetimeKind<Scalar>::make(variant, nu), gamma / nu);
    out.push_back({nu, abs(connection_coefficients(conn, t).gamma_t_tt - gl),
                   abs(curvature(conn, t, d).r_tt - rl)});
  }
  return out;
}

}  // namespace nhlab
