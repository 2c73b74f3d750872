#pragma once

// Finite NH transformations acting on the Beltrami and linear charts.
//
// An element (O, a^t, a, u) acts as
//   t' = (t - a^t) / sigma(a^t, t),
//   x' = sigma(a^t)^{1/2} / sigma(a^t, t) * O (x - a - u t).
// In homogeneous coordinates (W, T, X) with t = T/W, x = X/W this is the
// linear map
//   [ 1          -s nu^2 a^t   0  ]
//   [ -a^t        1            0  ]
//   [ -k O a     -k O u       k O ],   k = sigma(a^t)^{1/2},
// so composition and inversion reduce to matrix products followed by reading
// the parameters back off the normalised matrix.

#include <cmath>
#include <string>

#include <Eigen/Core>
#include <Eigen/LU>

#include "nhlab/geometry.hpp"

namespace nhlab {

template <typename Scalar = double>
struct BasicNHTransform {
  Mat<Scalar> rotation;      // O in SO(d)
  Scalar time_shift{0};      // a^t
  Vec<Scalar> shift;         // a
  Vec<Scalar> boost;         // u

  int dim() const { return static_cast<int>(shift.size()); }

  static BasicNHTransform identity(int d) {
    return {Mat<Scalar>::Identity(d, d), Scalar(0), Vec<Scalar>::Zero(d),
            Vec<Scalar>::Zero(d)};
  }
  static BasicNHTransform time_translation(int d, Scalar a_t) {
    auto g = identity(d);
    g.time_shift = a_t;
    return g;
  }
  static BasicNHTransform space_translation(Vec<Scalar> a) {
    auto g = identity(static_cast<int>(a.size()));
    g.shift = std::move(a);
    return g;
  }
  static BasicNHTransform pure_boost(Vec<Scalar> u) {
    auto g = identity(static_cast<int>(u.size()));
    g.boost = std::move(u);
    return g;
  }
  static BasicNHTransform pure_rotation(Mat<Scalar> o) {
    auto g = identity(static_cast<int>(o.rows()));
    g.rotation = std::move(o);
    return g;
  }
};

using NHTransform = BasicNHTransform<double>;

/// Checks shape, O^T O = 1, det O = 1 and, for NH, |a^t| < 1/nu.
template <typename Scalar>
void validate(const BasicSpacetimeKind<Scalar>& kind,
              const BasicNHTransform<Scalar>& g, Same<Scalar> tol = Scalar(1e-12)) {
  using std::abs;
  const int d = g.dim();
  if (g.rotation.rows() != d || g.rotation.cols() != d || g.boost.size() != d)
    throw InvalidArgument("NHTransform: inconsistent dimensions");
  const Mat<Scalar> gram = g.rotation.transpose() * g.rotation;
  if ((gram - Mat<Scalar>::Identity(d, d)).cwiseAbs().maxCoeff() > tol)
    throw InvalidArgument("NHTransform: rotation is not orthogonal");
  if (abs(g.rotation.determinant() - Scalar(1)) > tol)
    throw InvalidArgument("NHTransform: rotation has det != 1");
  if (!in_beltrami_domain(kind, g.time_shift))
    throw DomainError("NHTransform: |a^t| >= 1/nu");
}

template <typename Scalar>
BasicEvent<Scalar> apply(const BasicSpacetimeKind<Scalar>& kind,
                         const BasicNHTransform<Scalar>& g,
                         const BasicEvent<Scalar>& e) {
  using std::sqrt;
  if (e.chart != Chart::Beltrami)
    throw ChartMismatch("apply: event is not in the Beltrami chart");
  const Scalar denom = sigma_mix(kind, g.time_shift, e.time);
  if (denom == Scalar(0))
    throw SingularTransform("apply: sigma(a^t, t) = 0");
  // t' depends on t alone: simultaneity is absolute.
  const Scalar t_new = (e.time - g.time_shift) / denom;
  const Scalar scale = sqrt(sigma(kind, g.time_shift)) / denom;
  Vec<Scalar> x_new = scale * (g.rotation * (e.space - g.shift - g.boost * e.time));
  return beltrami_event<Scalar>(t_new, std::move(x_new));
}

/// (d+2)x(d+2) homogeneous matrix of g, ordered (W, T, X).
template <typename Scalar>
Mat<Scalar> homogeneous_matrix(const BasicSpacetimeKind<Scalar>& kind,
                               const BasicNHTransform<Scalar>& g) {
  using std::sqrt;
  const int d = g.dim();
  const Scalar k = sqrt(sigma(kind, g.time_shift));
  Mat<Scalar> m = Mat<Scalar>::Zero(d + 2, d + 2);
  m(0, 0) = Scalar(1);
  m(0, 1) = -kind.signed_nu2() * g.time_shift;
  m(1, 0) = -g.time_shift;
  m(1, 1) = Scalar(1);
  const Mat<Scalar> ko = k * g.rotation;
  m.block(2, 0, d, 1) = -ko * g.shift;
  m.block(2, 1, d, 1) = -ko * g.boost;
  m.block(2, 2, d, d) = ko;
  return m;
}

/// Reads the group parameters back off a homogeneous matrix (any overall scale).
template <typename Scalar>
BasicNHTransform<Scalar> from_homogeneous(const BasicSpacetimeKind<Scalar>& kind,
                                          const Mat<Scalar>& m) {
  using std::abs;
  using std::sqrt;
  const int d = static_cast<int>(m.rows()) - 2;
  const Scalar scale = m(0, 0);
  if (abs(scale) <= Scalar(1e-300) ||
      abs(m(1, 1) - scale) > Scalar(1e-9) * abs(scale))
    throw DomainError("composite transformation leaves the Beltrami parameterisation");
  const Scalar a_t = -m(1, 0) / scale;
  if (!in_beltrami_domain(kind, a_t))
    throw DomainError("composite time translation leaves (-1/nu, 1/nu)");
  const Scalar k = sqrt(sigma(kind, a_t));
  BasicNHTransform<Scalar> g;
  g.time_shift = a_t;
  g.rotation = m.block(2, 2, d, d) / (scale * k);
  if (d > 0 && g.rotation.determinant() < Scalar(0))
    throw DomainError("composite transformation contains a spatial inversion");
  const Mat<Scalar> inv_ko = g.rotation.transpose() / k;
  g.shift = -inv_ko * m.block(2, 0, d, 1) / scale;
  g.boost = -inv_ko * m.block(2, 1, d, 1) / scale;
  return g;
}

/// g2 o g1: first g1, then g2.
template <typename Scalar>
BasicNHTransform<Scalar> compose(const BasicSpacetimeKind<Scalar>& kind,
                                 const BasicNHTransform<Scalar>& g2,
                                 const BasicNHTransform<Scalar>& g1) {
  if (g1.dim() != g2.dim()) throw InvalidArgument("compose: dimension mismatch");
  return from_homogeneous(kind, Mat<Scalar>(homogeneous_matrix(kind, g2) *
                                            homogeneous_matrix(kind, g1)));
}

template <typename Scalar>
BasicNHTransform<Scalar> invert(const BasicSpacetimeKind<Scalar>& kind,
                                const BasicNHTransform<Scalar>& g) {
  return from_homogeneous(kind, Mat<Scalar>(homogeneous_matrix(kind, g).inverse()));
}

/// Velocity dx'/dt' of a world line through e with velocity v.
template <typename Scalar>
Vec<Scalar> transform_velocity(const BasicSpacetimeKind<Scalar>& kind,
                               const BasicNHTransform<Scalar>& g,
                               const BasicEvent<Scalar>& e, const Vec<Scalar>& v) {
  using std::sqrt;
  const Scalar denom = sigma_mix(kind, g.time_shift, e.time);
  if (denom == Scalar(0))
    throw SingularTransform("transform_velocity: sigma(a^t, t) = 0");
  const Scalar sa = sigma(kind, g.time_shift);
  const Vec<Scalar> rel = e.space - g.shift - g.boost * e.time;
  return g.rotation *
         ((v - g.boost) * denom + kind.signed_nu2() * g.time_shift * rel) /
         sqrt(sa);
}

/// dv'/dt' = sigma(a^t,t)^3 / sigma(a^t)^{3/2} O dv/dt.
template <typename Scalar>
Vec<Scalar> transform_acceleration(const BasicSpacetimeKind<Scalar>& kind,
                                   const BasicNHTransform<Scalar>& g,
                                   const BasicEvent<Scalar>& e,
                                   const Vec<Scalar>& /*v*/,
                                   const Vec<Scalar>& acc) {
  using std::pow;
  const Scalar denom = sigma_mix(kind, g.time_shift, e.time);
  if (denom == Scalar(0))
    throw SingularTransform("transform_acceleration: sigma(a^t, t) = 0");
  const Scalar sa = sigma(kind, g.time_shift);
  return (denom * denom * denom / pow(sa, Scalar(1.5))) * (g.rotation * acc);
}

/// Action on the linear chart (NH only):
///   lambda' = varsigma(a^t) lambda - a^t/(1 + nu a^t),
///   y'      = varsigma(a^t)^{1/2} O (y - a - w lambda),  w = u + nu a.
template <typename Scalar>
BasicEvent<Scalar> apply_linear(const BasicSpacetimeKind<Scalar>& kind,
                                const BasicNHTransform<Scalar>& g,
                                const BasicEvent<Scalar>& e) {
  using std::sqrt;
  if (!kind.is_nh()) throw DomainError("apply_linear: linear chart is NH only");
  if (e.chart != Chart::Linear)
    throw ChartMismatch("apply_linear: event is not in the linear chart");
  if (!(Scalar(1) + Scalar(2) * kind.nu() * e.time > Scalar(kDomainGuard)))
    throw DomainError("apply_linear: lambda <= -1/(2 nu)");
  const Scalar nu = kind.nu();
  const Scalar vs = varsigma(kind, g.time_shift);
  const Scalar lambda_new = vs * e.time - g.time_shift / (Scalar(1) + nu * g.time_shift);
  const Vec<Scalar> w = g.boost + nu * g.shift;
  Vec<Scalar> y_new = sqrt(vs) * (g.rotation * (e.space - g.shift - w * e.time));
  return linear_event<Scalar>(lambda_new, std::move(y_new));
}

}  // namespace nhlab
