#pragma once

// Charts on Newton-Hooke space-times and the scalar factors sigma, varsigma.
//
// Sign convention: every "upper/lower" pair of formulas is written with
// s = kind.sign(), s = +1 for NH, -1 for ANH and 0 for Galilei (where nu = 0
// anyway).  Hence sigma(t) = 1 - s nu^2 t^2.

#include <cmath>
#include <numbers>
#include <string>
#include <type_traits>

#include <Eigen/Core>

#include "nhlab/errors.hpp"

namespace nhlab {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Open chart boundaries are shrunk by this guard band.
inline constexpr double kDomainGuard = 1e-12;

enum class Variant { NH, ANH, Galilei };
enum class Chart { Beltrami, Static, Linear };

inline std::string to_string(Variant v) {
  switch (v) {
    case Variant::NH: return "nh";
    case Variant::ANH: return "anh";
    case Variant::Galilei: return "galilei";
  }
  return "?";
}

inline std::string to_string(Chart c) {
  switch (c) {
    case Chart::Beltrami: return "beltrami";
    case Chart::Static: return "static";
    case Chart::Linear: return "linear";
  }
  return "?";
}

template <typename Scalar = double>
class BasicSpacetimeKind {
 public:
  static BasicSpacetimeKind nh(Scalar nu) { return {Variant::NH, nu}; }
  static BasicSpacetimeKind anh(Scalar nu) { return {Variant::ANH, nu}; }
  static BasicSpacetimeKind galilei() { return {Variant::Galilei, Scalar(0)}; }

  /// Builds a kind and checks the nu/variant invariant (Galilei iff nu == 0).
  static BasicSpacetimeKind make(Variant v, Scalar nu) {
    return BasicSpacetimeKind(v, nu);
  }

  Variant variant() const { return variant_; }
  Scalar nu() const { return nu_; }
  int sign() const {
    switch (variant_) {
      case Variant::NH: return 1;
      case Variant::ANH: return -1;
      case Variant::Galilei: return 0;
    }
    return 0;
  }
  bool is_nh() const { return variant_ == Variant::NH; }
  bool is_anh() const { return variant_ == Variant::ANH; }
  bool is_galilei() const { return variant_ == Variant::Galilei; }

  /// s * nu^2, the coefficient that multiplies every t^2-type correction.
  Scalar signed_nu2() const { return Scalar(sign()) * nu_ * nu_; }

 private:
  BasicSpacetimeKind(Variant v, Scalar nu) : variant_(v), nu_(nu) {
    using std::isfinite;
    if (!isfinite(nu)) throw InvalidArgument("nu must be finite");
    if (v == Variant::Galilei && nu != Scalar(0))
      throw InvalidArgument("Galilei kind requires nu = 0");
    if (v != Variant::Galilei && !(nu > Scalar(0)))
      throw InvalidArgument("NH/ANH kinds require nu > 0");
  }

  Variant variant_;
  Scalar nu_;
};

using SpacetimeKind = BasicSpacetimeKind<double>;

/// A space-time point expressed in one chart: (t,x), (tau,q) or (lambda,y).
template <typename Scalar = double>
struct BasicEvent {
  Chart chart = Chart::Beltrami;
  Scalar time = Scalar(0);
  Vec<Scalar> space;

  int dim() const { return static_cast<int>(space.size()); }
};

using Event = BasicEvent<double>;

template <typename Scalar>
BasicEvent<Scalar> beltrami_event(Scalar t, Vec<Scalar> x) {
  return {Chart::Beltrami, t, std::move(x)};
}
template <typename Scalar>
BasicEvent<Scalar> static_event(Scalar tau, Vec<Scalar> q) {
  return {Chart::Static, tau, std::move(q)};
}
template <typename Scalar>
BasicEvent<Scalar> linear_event(Scalar lambda, Vec<Scalar> y) {
  return {Chart::Linear, lambda, std::move(y)};
}

template <typename Scalar>
using Same = std::type_identity_t<Scalar>;

/// sigma(t) = 1 -+ nu^2 t^2.
template <typename Scalar>
Scalar sigma(const BasicSpacetimeKind<Scalar>& kind, Same<Scalar> t) {
  return Scalar(1) - kind.signed_nu2() * t * t;
}

/// sigma(a, t) = 1 -+ nu^2 a t.
template <typename Scalar>
Scalar sigma_mix(const BasicSpacetimeKind<Scalar>& kind, Same<Scalar> a,
                 Same<Scalar> t) {
  return Scalar(1) - kind.signed_nu2() * a * t;
}

/// True when t lies inside the Beltrami chart, |t| < 1/nu for NH (with guard).
template <typename Scalar>
bool in_beltrami_domain(const BasicSpacetimeKind<Scalar>& kind, Same<Scalar> t,
                        Same<Scalar> guard = Scalar(kDomainGuard)) {
  using std::abs;
  if (!kind.is_nh()) return true;
  return abs(kind.nu() * t) < Scalar(1) - guard;
}

template <typename Scalar>
void require_beltrami_domain(const BasicSpacetimeKind<Scalar>& kind,
                             Same<Scalar> t, const char* where) {
  if (!in_beltrami_domain(kind, t))
    throw DomainError(std::string(where) +
                      ": Beltrami time outside (-1/nu, 1/nu)");
}

/// varsigma(t): (1 - nu t)/(1 + nu t) for NH, exp(-2 atan(nu t)) for ANH,
/// identically 1 for Galilei.
template <typename Scalar>
Scalar varsigma(const BasicSpacetimeKind<Scalar>& kind, Same<Scalar> t) {
  using std::atan;
  using std::exp;
  switch (kind.variant()) {
    case Variant::NH:
      require_beltrami_domain(kind, t, "varsigma");
      return (Scalar(1) - kind.nu() * t) / (Scalar(1) + kind.nu() * t);
    case Variant::ANH:
      return exp(Scalar(-2) * atan(kind.nu() * t));
    case Variant::Galilei:
      return Scalar(1);
  }
  return Scalar(1);
}

/// d tau / d t along any world line, i.e. 1/sigma(t).
template <typename Scalar>
Scalar proper_time_rate(const BasicSpacetimeKind<Scalar>& kind,
                        Same<Scalar> t) {
  require_beltrami_domain(kind, t, "proper_time_rate");
  const Scalar s = sigma(kind, t);
  if (s <= Scalar(0)) throw DomainError("proper_time_rate: sigma(t) <= 0");
  return Scalar(1) / s;
}

/// Proper time tau(t) from the Beltrami time.
template <typename Scalar>
Scalar proper_time(const BasicSpacetimeKind<Scalar>& kind, Same<Scalar> t) {
  using std::atan;
  using std::atanh;
  switch (kind.variant()) {
    case Variant::NH:
      require_beltrami_domain(kind, t, "proper_time");
      return atanh(kind.nu() * t) / kind.nu();
    case Variant::ANH:
      return atan(kind.nu() * t) / kind.nu();
    case Variant::Galilei:
      return t;
  }
  return t;
}

/// Inverse of proper_time; the ANH branch is the principal one, |nu tau| < pi/2.
template <typename Scalar>
Scalar beltrami_time(const BasicSpacetimeKind<Scalar>& kind, Same<Scalar> tau) {
  using std::abs;
  using std::tan;
  using std::tanh;
  switch (kind.variant()) {
    case Variant::NH:
      return tanh(kind.nu() * tau) / kind.nu();
    case Variant::ANH:
      if (!(abs(kind.nu() * tau) <
            std::numbers::pi_v<Scalar> / 2 - Scalar(kDomainGuard)))
        throw DomainError("static_to_beltrami: ANH tau outside principal branch");
      return tan(kind.nu() * tau) / kind.nu();
    case Variant::Galilei:
      return tau;
  }
  return tau;
}

template <typename Scalar>
BasicEvent<Scalar> beltrami_to_static(const BasicSpacetimeKind<Scalar>& kind,
                                      const BasicEvent<Scalar>& e) {
  using std::sqrt;
  if (e.chart != Chart::Beltrami)
    throw ChartMismatch("beltrami_to_static: event is not in the Beltrami chart");
  const Scalar tau = proper_time(kind, e.time);
  const Scalar s = sigma(kind, e.time);
  if (s <= Scalar(0)) throw DomainError("beltrami_to_static: sigma(t) <= 0");
  return static_event<Scalar>(tau, e.space / sqrt(s));
}

template <typename Scalar>
BasicEvent<Scalar> static_to_beltrami(const BasicSpacetimeKind<Scalar>& kind,
                                      const BasicEvent<Scalar>& e) {
  using std::sqrt;
  if (e.chart != Chart::Static)
    throw ChartMismatch("static_to_beltrami: event is not in the static chart");
  const Scalar t = beltrami_time(kind, e.time);
  const Scalar s = sigma(kind, t);
  if (s <= Scalar(0)) throw DomainError("static_to_beltrami: sigma(t) <= 0");
  return beltrami_event<Scalar>(t, e.space * sqrt(s));
}

/// Linear coordinates lambda = t/(1 - nu t), y = x/(1 - nu t); NH only.
template <typename Scalar>
BasicEvent<Scalar> beltrami_to_linear(const BasicSpacetimeKind<Scalar>& kind,
                                      const BasicEvent<Scalar>& e) {
  if (!kind.is_nh()) throw DomainError("linear chart is defined only for NH");
  if (e.chart != Chart::Beltrami)
    throw ChartMismatch("beltrami_to_linear: event is not in the Beltrami chart");
  require_beltrami_domain(kind, e.time, "beltrami_to_linear");
  const Scalar denom = Scalar(1) - kind.nu() * e.time;
  return linear_event<Scalar>(e.time / denom, e.space / denom);
}

template <typename Scalar>
BasicEvent<Scalar> linear_to_beltrami(const BasicSpacetimeKind<Scalar>& kind,
                                      const BasicEvent<Scalar>& e) {
  if (!kind.is_nh()) throw DomainError("linear chart is defined only for NH");
  if (e.chart != Chart::Linear)
    throw ChartMismatch("linear_to_beltrami: event is not in the linear chart");
  // lambda > -1/(2 nu)  <=>  1 + 2 nu lambda > 0
  if (!(Scalar(1) + Scalar(2) * kind.nu() * e.time > Scalar(kDomainGuard)))
    throw DomainError("linear_to_beltrami: lambda <= -1/(2 nu)");
  const Scalar denom = Scalar(1) + kind.nu() * e.time;
  return beltrami_event<Scalar>(e.time / denom, e.space / denom);
}

}  // namespace nhlab
