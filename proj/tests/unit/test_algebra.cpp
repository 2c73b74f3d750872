#include <cmath>
#include <random>

#include "doctest.h"
#include "nhlab/algebra/brackets.hpp"

using namespace nhlab;
using namespace nhlab::algebra;

namespace {

using G = GeneratorName;

std::vector<std::vector<double>> box(int n, int dim, double tmax, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ut(-tmax, tmax), ux(-1.5, 1.5);
  std::vector<std::vector<double>> p(static_cast<std::size_t>(n));
  for (auto& v : p) {
    v.push_back(ut(rng));
    for (int k = 0; k < dim; ++k) v.push_back(ux(rng));
  }
  return p;
}

}  // namespace

TEST_CASE("expressions differentiate exactly") {
  const Expr t = time_var(), x = space_var(0);
  const Expr f = sin(2.0 * t) * x * x + exp(t * x);
  const std::vector<double> p{0.3, -0.7};
  const Complex ft = f.diff(0)(p), fx = f.diff(1)(p);
  CHECK(std::abs(ft - (2.0 * std::cos(0.6) * 0.49 + -0.7 * std::exp(-0.21))) < 1e-14);
  CHECK(std::abs(fx - (2.0 * std::sin(0.6) * -0.7 + 0.3 * std::exp(-0.21))) < 1e-14);
  CHECK((t * 0.0).is_zero());
  CHECK(cosh(Expr(0.0)).constant_value() == Complex(1.0, 0.0));
}

TEST_CASE("realize: spot values") {
  const auto nh = SpacetimeKind::nh(0.7);
  const auto anh = SpacetimeKind::anh(1.0);
  const std::vector<double> p{0.2, 0.4, -0.3};

  auto P = realize({G::P, 1}, Chart::Beltrami, anh, 2);
  CHECK(P.c_t.is_zero());
  CHECK(P.c_x[0].is_zero());
  CHECK(P.c_x[1].constant_value() == Complex(-1.0, 0.0));

  auto H0 = realize({G::H}, Chart::Beltrami, SpacetimeKind::galilei(), 2);
  CHECK(H0.c_t.constant_value() == Complex(1.0, 0.0));
  CHECK(H0.c_x[0].is_zero());

  auto Kh = realize({G::K, 0}, Chart::Static, anh, 2);
  CHECK(std::abs(Kh.c_x[0](std::vector<double>{0.0, 1.0, 2.0})) == 0.0);

  // Beltrami H = sigma d_t - nu^2 t x d (NH).
  auto H = realize({G::H}, Chart::Beltrami, nh, 2);
  CHECK(std::abs(H.c_t(p) - (1.0 - 0.49 * 0.04)) < 1e-15);
  CHECK(std::abs(H.c_x[1](p) - (-0.49 * 0.2 * -0.3)) < 1e-15);

  CHECK_THROWS_AS(realize({G::Dilatation}, Chart::Static, SpacetimeKind::galilei(), 1),
                  Unsupported);
  CHECK_THROWS_AS(realize({G::Lowering, 0}, Chart::Beltrami, anh, 1), Unsupported);
}

TEST_CASE("static-chart Hermitian generators match the closed forms") {
  // P^ = -i hbar cos(nu tau) d_q + m nu q sin(nu tau),
  // K^ = -i hbar nu^-1 sin(nu tau) d_q - m q cos(nu tau)   (ANH, extended).
  const double nu = 0.8, hbar = 0.9, m = 1.3;
  const auto anh = SpacetimeKind::anh(nu);
  RealizeOptions o{true, Convention::Hermitian, hbar, m};
  const auto P = realize({G::P, 0}, Chart::Static, anh, 1, o);
  const auto K = realize({G::K, 0}, Chart::Static, anh, 1, o);
  const auto A = realize({G::Lowering, 0}, Chart::Static, anh, 1, o);
  const Complex I(0, 1);
  for (const auto& p : box(50, 1, 1.2, 7)) {
    const double tau = p[0], q = p[1];
    CHECK(std::abs(P.c_x[0](p) - (-I * hbar * std::cos(nu * tau))) < 1e-14);
    CHECK(std::abs(P.c_0(p) - m * nu * q * std::sin(nu * tau)) < 1e-14);
    CHECK(std::abs(K.c_x[0](p) - (-I * hbar / nu * std::sin(nu * tau))) < 1e-14);
    CHECK(std::abs(K.c_0(p) - (-m * q * std::cos(nu * tau))) < 1e-14);
    // A = -i hbar e^{i nu tau} d_q - i m nu q e^{i nu tau}
    const Complex e = std::exp(I * nu * tau);
    CHECK(std::abs(A.c_x[0](p) - (-I * hbar * e)) < 1e-14);
    CHECK(std::abs(A.c_0(p) - (-I * m * nu * q * e)) < 1e-14);
  }
}

TEST_CASE("first-order operators obey the Leibniz rule") {
  const auto kind = SpacetimeKind::nh(0.6);
  const auto X = realize({G::H}, Chart::Beltrami, kind, 2, {true});
  const Expr t = time_var(), x = space_var(0), y = space_var(1);
  const Expr f = sin(t * x) + y * y, g = exp(0.3 * x) * cos(y + t);
  const Expr lhs = X.apply(f * g) - f * X.apply(g) - g * X.apply(f) + f * g * X.c_0;
  for (const auto& p : box(200, 2, 1.0, 3)) CHECK(std::abs(lhs(p)) < 1e-10);
}

TEST_CASE("commutator is antisymmetric and rejects mixed charts") {
  const auto kind = SpacetimeKind::anh(1.1);
  const auto a = realize({G::Conformal}, Chart::Static, kind, 2);
  const auto b = realize({G::K, 1}, Chart::Static, kind, 2, {true});
  const auto pts = box(200, 2, 1.0, 5);
  CHECK(max_abs_coefficient(commutator(a, b) + commutator(b, a), pts) < 1e-13);
  CHECK_THROWS_AS(commutator(a, realize({G::H}, Chart::Beltrami, kind, 2)), ChartMismatch);
}

TEST_CASE("bracket tables hold for both kinds") {
  for (const auto& kind : {SpacetimeKind::nh(0.9), SpacetimeKind::anh(1.3)}) {
    for (auto table : {BracketTable::NHAlgebra, BracketTable::ExtendedNH, BracketTable::Ladder,
                       BracketTable::SO12}) {
      BracketOptions o;
      o.samples = 200;
      o.hbar = 0.7;
      o.mass = 1.9;
      const auto r = verify_bracket_table(kind, table, o);
      CAPTURE(to_string(kind.variant()));
      CAPTURE(to_string(table));
      CHECK(!r.entries.empty());
      for (const auto& e : r.entries) {
        CAPTURE(e.bracket);
        CHECK(e.max_abs_deviation <= 1e-12);
      }
    }
  }
  const auto gal = verify_bracket_table(SpacetimeKind::galilei(), BracketTable::ExtendedNH);
  CHECK(gal.all_pass());
  CHECK_THROWS_AS(verify_bracket_table(SpacetimeKind::galilei(), BracketTable::SO12),
                  Unsupported);
}

TEST_CASE("a wrong right-hand side is reported, not absorbed") {
  // [H,P] = +nu^2 K holds for NH; the same operators in ANH give -nu^2 K.
  const auto nh = SpacetimeKind::nh(1.0);
  const auto anh = SpacetimeKind::anh(1.0);
  const auto pts = box(100, 1, 0.5, 1);
  const auto hp = commutator(realize({G::H}, Chart::Beltrami, anh, 1),
                             realize({G::P, 0}, Chart::Beltrami, anh, 1));
  const auto wrong = realize({G::K, 0}, Chart::Beltrami, nh, 1);
  CHECK(max_abs_difference(hp, wrong, pts) > 0.1);
}

TEST_CASE("Jacobi identity on random triples") {
  std::mt19937_64 rng(2024);
  const std::vector<GeneratorId> ids{{G::H},    {G::P, 0}, {G::P, 1},      {G::K, 0},
                                     {G::K, 1}, {G::J, 0, 1}, {G::Dilatation}, {G::Conformal},
                                     {G::GalileiTime}};
  std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
  for (const auto& kind : {SpacetimeKind::nh(0.8), SpacetimeKind::anh(1.2)}) {
    for (Chart chart : {Chart::Beltrami, Chart::Static}) {
      BracketOptions o;
      o.dim = 2;
      o.samples = 100;
      const auto pts = sample_points(chart, kind, o);
      for (int n = 0; n < 20; ++n) {
        const auto x = realize(ids[pick(rng)], chart, kind, 2, {true});
        const auto y = realize(ids[pick(rng)], chart, kind, 2, {true});
        const auto z = realize(ids[pick(rng)], chart, kind, 2, {true});
        CHECK(jacobi_deviation(x, y, z, pts) < 1e-10);
      }
    }
  }
}

TEST_CASE("Galilei contraction: [H,P] vanishes like nu^2") {
  const auto pts = box(100, 1, 1.0, 9);
  double prev = 0.0;
  for (double nu : {0.1, 0.05, 0.025}) {
    const auto kind = SpacetimeKind::nh(nu);
    const auto hp = commutator(realize({G::H}, Chart::Beltrami, kind, 1),
                               realize({G::P, 0}, Chart::Beltrami, kind, 1));
    const double size = max_abs_coefficient(hp, pts);
    if (prev > 0.0) CHECK(std::abs(prev / size - 4.0) < 1e-9);
    prev = size;
  }
}

TEST_CASE("dG equals 2 dt - dtau in each chart") {
  for (const auto& kind : {SpacetimeKind::nh(0.5), SpacetimeKind::anh(0.5)}) {
    const auto r = verify_bracket_table(kind, BracketTable::SO12);
    int identities = 0;
    for (const auto& e : r.entries)
      if (e.expected == "2 dt - dtau") {
        ++identities;
        CHECK(e.pass);
      }
    CHECK(identities == 2);
  }
}
