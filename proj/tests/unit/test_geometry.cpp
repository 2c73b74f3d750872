#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "nhlab/geometry.hpp"

using namespace nhlab;
using V = Vec<double>;

namespace {

V v2(double a, double b) {
  V v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("sigma and sigma_mix") {
  CHECK(sigma(SpacetimeKind::nh(1.0), 0.0) == 1.0);
  CHECK(sigma(SpacetimeKind::nh(0.5), 1.0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(sigma(SpacetimeKind::anh(2.0), 1.0) == 5.0);
  CHECK(sigma(SpacetimeKind::galilei(), 123.0) == 1.0);
  CHECK(sigma_mix(SpacetimeKind::nh(1.0), 0.0, 7.0) == 1.0);
  CHECK(sigma_mix(SpacetimeKind::nh(1.0), 0.5, 0.5) == 0.75);
  CHECK(sigma_mix(SpacetimeKind::anh(1.0), 1.0, 1.0) == 2.0);
}

TEST_CASE("kind invariants") {
  CHECK_THROWS_AS(SpacetimeKind::nh(0.0), InvalidArgument);
  CHECK_THROWS_AS(SpacetimeKind::make(Variant::Galilei, 0.1), InvalidArgument);
  CHECK(SpacetimeKind::nh(1.0).sign() == 1);
  CHECK(SpacetimeKind::anh(1.0).sign() == -1);
}

TEST_CASE("varsigma") {
  CHECK(varsigma(SpacetimeKind::nh(1.0), 0.0) == 1.0);
  CHECK(varsigma(SpacetimeKind::nh(1.0), 0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(varsigma(SpacetimeKind::anh(1.0), 1.0) ==
        doctest::Approx(std::exp(-std::numbers::pi / 2)).epsilon(1e-15));
  CHECK_THROWS_AS(varsigma(SpacetimeKind::nh(1.0), 1.0), DomainError);
}

TEST_CASE("chart conversions: spot values") {
  const auto anh = SpacetimeKind::anh(1.0);
  auto s = beltrami_to_static(anh, beltrami_event(1.0, v2(1, 0)));
  CHECK(s.time == doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
  CHECK(s.space[0] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  auto b = static_to_beltrami(anh, static_event(std::numbers::pi / 4, v2(1, 0)));
  CHECK(b.time == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(b.space[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  const auto nh = SpacetimeKind::nh(1.0);
  CHECK(static_to_beltrami(nh, static_event(std::atanh(0.5), v2(0, 0))).time ==
        doctest::Approx(0.5).epsilon(1e-15));
  auto l = beltrami_to_linear(nh, beltrami_event(0.5, v2(1, 0)));
  CHECK(l.time == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(l.space[0] == doctest::Approx(2.0).epsilon(1e-15));
  auto back = linear_to_beltrami(nh, linear_event(1.0, v2(2, 0)));
  CHECK(back.time == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(back.space[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(linear_to_beltrami(nh, linear_event(-0.5, v2(0, 0))), DomainError);
  CHECK_THROWS_AS(beltrami_to_linear(anh, beltrami_event(0.0, v2(0, 0))), DomainError);
  CHECK_THROWS_AS(beltrami_to_static(nh, beltrami_event(1.0, v2(0, 0))), DomainError);
  CHECK_THROWS_AS(static_to_beltrami(anh, static_event(2.0, v2(0, 0))), DomainError);
  CHECK_THROWS_AS(beltrami_to_static(nh, static_event(0.0, v2(0, 0))), ChartMismatch);
}

TEST_CASE("chart round trips on random events") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const double nu = 0.2 + 2.0 * std::abs(u(rng));
    const auto nh = SpacetimeKind::nh(nu);
    const auto anh = SpacetimeKind::anh(nu);
    const V x = V::NullaryExpr(3, [&] { return 3.0 * u(rng); });
    const double t = 0.99 * u(rng) / nu;
    for (const auto& k : {nh, anh}) {
      const auto e = beltrami_event(t, x);
      const auto r = static_to_beltrami(k, beltrami_to_static(k, e));
      worst = std::max({worst, std::abs(r.time - t), (r.space - x).cwiseAbs().maxCoeff()});
    }
    // linear chart covers t < 1/nu, i.e. lambda > -1/(2 nu)
    const auto e = beltrami_event(t, x);
    const auto r = linear_to_beltrami(nh, beltrami_to_linear(nh, e));
    worst = std::max({worst, std::abs(r.time - t), (r.space - x).cwiseAbs().maxCoeff()});
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("proper time rate") {
  const auto nh = SpacetimeKind::nh(1.0);
  CHECK(proper_time_rate(nh, 0.0) == 1.0);
  CHECK(proper_time_rate(nh, 0.5) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(proper_time_rate(nh, 1.0), DomainError);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (const auto& k : {SpacetimeKind::nh(1.3), SpacetimeKind::anh(0.7)}) {
    for (int n = 0; n < 200; ++n) {
      const double t = u(rng) / k.nu();
      const double h = 1e-5;
      const double fd = (proper_time(k, t + h) - proper_time(k, t - h)) / (2 * h);
      CHECK(std::abs(fd - proper_time_rate(k, t)) < 1e-8 * proper_time_rate(k, t));
      CHECK(sigma(k, t) * proper_time_rate(k, t) == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
}

TEST_CASE("sigma identity under time translation and varsigma multiplicativity") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-0.95, 0.95), uc(-2.0, 2.0);
  for (const auto& k : {SpacetimeKind::nh(1.0), SpacetimeKind::anh(1.0)}) {
    for (int n = 0; n < 2000; ++n) {
      const double a = u(rng), t = u(rng), c = uc(rng);
      const double tp = (t - a) / sigma_mix(k, a, t);
      const double lhs = sigma(k, tp) * std::pow(sigma_mix(k, a, t), 2);
      CHECK(std::abs(lhs - sigma(k, a) * sigma(k, t)) < 1e-12);
      const double ratio =
          std::pow(varsigma(k, tp), c) / (std::pow(varsigma(k, t), c) / std::pow(varsigma(k, a), c));
      CHECK(std::abs(ratio - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("float instantiation compiles and agrees") {
  const auto k = BasicSpacetimeKind<float>::nh(1.0f);
  CHECK(sigma(k, 0.5f) == doctest::Approx(0.75f));
}
