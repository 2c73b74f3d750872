#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Geometry>
#include <Eigen/QR>

#include "doctest.h"
#include "nhlab/gravity.hpp"
#include "nhlab/quadrature.hpp"

using namespace nhlab;
using namespace nhlab::gravity;
using V = Vector;

namespace {

constexpr double kPi = std::numbers::pi;

V v3(double a, double b, double c) { return (V(3) << a, b, c).finished(); }

// Fixed-source Kepler orbit starting at periapsis (r_p, 0, 0) moving along +y, GM = 1.
struct Kepler {
  double a, e;
  double period() const { return 2 * kPi * std::pow(a, 1.5); }
  V at(double t) const {
    const double m = t / std::pow(a, 1.5);
    double ea = m;
    for (int k = 0; k < 50; ++k) ea -= (ea - e * std::sin(ea) - m) / (1 - e * std::cos(ea));
    return v3(a * (std::cos(ea) - e), a * std::sqrt(1 - e * e) * std::sin(ea), 0.0);
  }
};

Kepler kepler_from(double rp, double vp) {
  const double a = 1.0 / (2.0 / rp - vp * vp);
  return {a, 1.0 - rp / a};
}

}  // namespace

TEST_CASE("point acceleration: spot values") {
  const auto src = PointSource::fixed(1.0, V::Zero(3));
  const V x = v3(1, 0, 0);
  CHECK((point_acceleration(SpacetimeKind::galilei(), src, 5.0, x) - v3(-1, 0, 0)).norm() == 0.0);
  CHECK((point_acceleration(SpacetimeKind::nh(3.0), src, 0.0, x) - v3(-1, 0, 0)).norm() == 0.0);
  CHECK(point_acceleration(SpacetimeKind::nh(1.0), src, 0.5, x).norm() ==
        doctest::Approx(1.0 / std::sqrt(0.75)).epsilon(1e-15));
  CHECK(point_acceleration(SpacetimeKind::anh(1.0), src, 1.0, x).norm() ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(point_acceleration(SpacetimeKind::nh(1.0), src, 0.0, V::Zero(3)), CollisionError);
  CHECK_THROWS_AS(point_acceleration(SpacetimeKind::nh(1.0), src, 1.0, x), DomainError);
  CHECK_THROWS_AS(point_acceleration(SpacetimeKind::nh(1.0), src, 0.0, V::Ones(2)), InvalidArgument);
}

TEST_CASE("Galilei limit reproduces Kepler orbits") {
  const auto src = PointSource::fixed(1.0, V::Zero(3));
  const auto g = SpacetimeKind::galilei();
  // circular
  const auto circ = integrate_orbit(g, src, {0.0, v3(1, 0, 0), v3(0, 1, 0)}, 2 * kPi, 4000);
  double drift = 0.0, pos = 0.0;
  for (std::size_t k = 0; k < circ.size(); ++k) {
    drift = std::max(drift, std::abs(circ.positions[k].norm() - 1.0));
    const double t = circ.times[k];
    pos = std::max(pos, (circ.positions[k] - v3(std::cos(t), std::sin(t), 0)).cwiseAbs().maxCoeff());
  }
  CHECK(drift < 1e-6);
  CHECK(pos < 1e-6);

  // eccentric, e = 0.44
  const auto kep = kepler_from(1.0, 1.2);
  const auto orb = integrate_orbit(g, src, {0.0, v3(1, 0, 0), v3(0, 1.2, 0)}, kep.period(), 40000);
  double worst = 0.0;
  for (std::size_t k = 0; k < orb.size(); k += 97)
    worst = std::max(worst, (orb.positions[k] - kep.at(orb.times[k])).cwiseAbs().maxCoeff());
  worst = std::max(worst, (orb.positions.back() - v3(1, 0, 0)).cwiseAbs().maxCoeff());
  CHECK(worst < 1e-6);

  // NH with tiny nu converges to the same orbit
  const auto nh = integrate_orbit(SpacetimeKind::nh(1e-5), src, {0.0, v3(1, 0, 0), v3(0, 1, 0)}, 2 * kPi, 4000);
  CHECK((nh.positions.back() - circ.positions.back()).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("small nu departs from Kepler at order nu^2") {
  const auto src = PointSource::fixed(1.0, V::Zero(3));
  const auto ref = integrate_orbit(SpacetimeKind::galilei(), src, {0.0, v3(1, 0, 0), v3(0, 1, 0)}, 6.0, 6000);
  auto dev = [&](double nu) {
    const auto o = integrate_orbit(SpacetimeKind::nh(nu), src, {0.0, v3(1, 0, 0), v3(0, 1, 0)}, 6.0, 6000);
    return (o.positions.back() - ref.positions.back()).norm();
  };
  const double ratio = dev(0.02) / dev(0.01);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("radial fall stays radial and C never enters") {
  const auto src = PointSource::fixed(2.0, V::Zero(3));
  const V dir = v3(1, -2, 0.5).normalized();
  for (const auto& k : {SpacetimeKind::nh(0.5), SpacetimeKind::anh(0.5)}) {
    const auto o = integrate_orbit(k, src, {0.0, V(3.0 * dir), V::Zero(3)}, 1.0, 200);
    for (const auto& x : o.positions) CHECK((x.normalized() - dir).norm() < 1e-14);

    const OrbitState init{0.1, v3(1, 0.2, 0), v3(0, 0.9, 0.1)};
    const auto o0 = integrate_orbit(AnomalousConnection::make(k, 0.0), src, init, 1.5, 300);
    const auto o1 = integrate_orbit(AnomalousConnection::make(k, 1.7), src, init, 1.5, 300);
    for (std::size_t j = 0; j < o0.size(); ++j) CHECK(o0.positions[j] == o1.positions[j]);
  }
  CHECK_THROWS_AS(integrate_orbit(SpacetimeKind::nh(1.0), src, {0.0, v3(3, 0, 0), v3(0, 1, 0)}, 2.0, 100),
                  DomainExit);
}

TEST_CASE("the law is NH covariant") {
  const auto k = SpacetimeKind::nh(0.2);
  const auto fixed = PointSource::fixed(1.0, V::Zero(3));
  PointSource moving{1.0, 1.0, [](double t) { return V(v3(0.1, -0.05, 0.02) * t); }};
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1, 1);
  const std::vector<const PointSource*> sources = {&fixed, &moving};
  for (const PointSource* src : sources) {
    const auto orbit = integrate_orbit(k, *src, {-1.0, v3(1, 0, 0.1), v3(0, 1, 0)}, 2.0, 3000);
    const double raw = law_residual(k, *src, orbit);
    CHECK(raw < 1e-7);
    CHECK(covariance_check(k, NHTransform::identity(3), *src, orbit) == raw);

    Eigen::Matrix3d m = Eigen::Matrix3d::NullaryExpr([&] { return u(rng); });
    Eigen::Matrix3d o = Eigen::HouseholderQR<Eigen::Matrix3d>(m).householderQ();
    if (o.determinant() < 0) o.col(0) *= -1.0;
    // unchanged up to the roundoff of the second differences, ~ eps |x| / h^2
    CHECK(std::abs(covariance_check(k, NHTransform::pure_rotation(o), *src, orbit) - raw) < 1e-9);

    for (int n = 0; n < 10; ++n) {
      NHTransform g{o, 1.5 * u(rng), v3(u(rng), u(rng), u(rng)), 0.5 * v3(u(rng), u(rng), u(rng))};
      CHECK(covariance_check(k, g, *src, orbit) < 1e-6);
    }
    // a wrong law is caught: the Galilei field is not the NH one away from t = 0
    CHECK(covariance_check(SpacetimeKind::galilei(), NHTransform::identity(3), *src, orbit) > 1e-4);
  }
}

TEST_CASE("Gauss law and field identities") {
  CHECK(gauss_legendre(3).nodes[2] == doctest::Approx(std::sqrt(0.6)).epsilon(1e-14));
  CHECK(gauss_legendre(3).weights[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
  const auto w = fd_weights(0.0, {-1.0, 0.0, 1.0}, 2);
  CHECK(w[0] == doctest::Approx(1.0));
  CHECK(w[1] == doctest::Approx(-2.0));

  const auto src = PointSource::fixed(1.3, v3(0.2, -0.1, 0.4), 0.7);
  for (const auto& k : {SpacetimeKind::nh(1.0), SpacetimeKind::anh(1.0), SpacetimeKind::galilei()}) {
    for (double t : {0.0, 0.6}) {
      const auto f1 = divergence_check(k, src, t, 1.0, 64, v3(0.3, 0.1, -0.2));
      const auto f2 = divergence_check(k, src, t, 2.5, 64, v3(0.3, 0.1, -0.2));
      CHECK(std::abs(f1.flux - f2.flux) < 1e-8);
      CHECK(std::abs(f1.flux - f1.expected) < 1e-8);
      if (t == 0.0) CHECK(f1.expected == doctest::Approx(4 * kPi * 0.7 * 1.3).epsilon(1e-15));
    }
    const V x = src.position(0.0) + v3(2, 0, 0);
    CHECK(std::abs(field_divergence(k, src, 0.3, x)) < 1e-10);
    CHECK(field_curl(k, src, 0.3, v3(1, 1.5, -0.7)).cwiseAbs().maxCoeff() < 1e-8);
  }
  // outside the sphere: zero flux is not claimed, the call is refused
  CHECK_THROWS_AS(divergence_check(SpacetimeKind::nh(1.0), src, 0.0, 0.5, 16, v3(1, 0, 0)), InvalidArgument);
}
