#include <algorithm>
#include <cmath>
#include <numbers>

#include "nhlab/quantum/density.hpp"
#include "nhlab/quantum/evolve.hpp"
#include "nhlab/quantum/maps.hpp"
#include "nhlab/quantum/residual.hpp"
#include "nhlab/quantum/states.hpp"
#include "nhlab/quantum/symmetry.hpp"
#include "suites.hpp"

namespace nhlab::verify::detail {

namespace {

using namespace quantum;

constexpr double kPi = std::numbers::pi;

struct Setup {
  GridSpec grid;
  double width;   // packet width
  double window;  // factor on every time parameter
};

// Reference resolution per dimension. The ordinary representation carries a
// position chirp that grows with t, so the 3-d grid runs on a shorter window.
Setup invariance_setup(int d) {
  if (d == 1) return {{1, 1024, 40.0}, 1.0, 1.0};
  if (d == 2) return {{2, 128, 24.0}, 1.0, 1.0};
  return {{3, 64, 24.0}, 1.0, 0.5};
}

// Rotations resample through a dense N^d x N^d contraction. They act
// trivially in d = 1 and are checked on a 2-d grid there.
Setup rotation_setup(int d) {
  if (d <= 2) return invariance_setup(2);
  return {{3, 32, 20.0}, 1.0, 0.5};
}

GridSpec duality_grid(int d) { return d == 1 ? GridSpec{1, 1024, 40.0} : GridSpec{d, 64, 24.0}; }

GridState packet(const GridSpec& g, double t, const Point& x0, const Point& p0, double w, double hbar, double m) {
  return sample(Chart::Beltrami, t, g, hbar, m,
                [&](const Point& x) { return gaussian_packet(x, t, x0, p0, w, hbar, m); });
}

std::vector<double> five(double c, double h) { return {c - 2 * h, c - h, c, c + h, c + 2 * h}; }

// The same NH element as a group transformation, for independent pre-images.
NHTransform as_group_element(const Symmetry& s, int d) {
  if (auto* p = std::get_if<SpaceTranslation>(&s)) return NHTransform::space_translation(p->a);
  if (auto* p = std::get_if<TimeTranslation>(&s)) return NHTransform::time_translation(d, p->a_t);
  if (auto* p = std::get_if<GalileanBoost>(&s)) return NHTransform::pure_boost(p->u);
  if (auto* p = std::get_if<Rotation>(&s)) return NHTransform::pure_rotation(p->o);
  throw InvalidArgument("not an NH transformation");
}

}  // namespace

void quantum_suite(Context& c, Recorder& r) {
  const auto& k = c.kind;
  const int d = c.d;
  const double hbar = c.cfg.hbar, m = c.cfg.mass;
  const Setup su = invariance_setup(d), rs = rotation_setup(d);
  const GridSpec& g = su.grid;
  const double T = c.T() * su.window;
  const double t1 = 0.1 * T, t2 = 0.6 * T;
  const Point x0 = Point::Constant(d, 0.3), p0 = Point::Constant(d, 0.5);
  const GridState tl = packet(g, t1, x0, p0, su.width, hbar, m);
  const GridState psi = gauge_map(GaugeDirection::TildeToPsi, k, tl);

  const Symmetry shift = SpaceTranslation{Point::Constant(d, 1.2)};
  const Symmetry later = TimeTranslation{0.3 * T}, earlier = TimeTranslation{-0.4 * T};
  const Symmetry boost = GalileanBoost{Point::Constant(d, -0.8)};
  auto inv = [&](Equation eq, const Symmetry& s, const GridState& st) {
    return invariance_residual(eq, s, k, st, t2, 20);
  };

  const int rd = rs.grid.dim;
  const Point rx0 = Point::Constant(rd, 0.3), rp0 = Point::Constant(rd, 0.5);
  const GridState rtl = packet(rs.grid, t1, rx0, rp0, rs.width, hbar, m);
  const GridState rpsi = gauge_map(GaugeDirection::TildeToPsi, k, rtl);
  const Symmetry rot = Rotation{c.rotation(rd)};

  r.add("ordinary_space_translation", inv(Equation::OrdinaryNH, shift, psi));
  r.add("ordinary_time_translation",
        std::max(inv(Equation::OrdinaryNH, later, psi), inv(Equation::OrdinaryNH, earlier, psi)));
  r.add("ordinary_boost", inv(Equation::OrdinaryNH, boost, psi));
  r.add("ordinary_rotation", inv(Equation::OrdinaryNH, rot, rpsi));
  r.add("extraordinary_space_translation", inv(Equation::Extraordinary, shift, tl));
  r.add("extraordinary_time_translation",
        std::max(inv(Equation::Extraordinary, later, tl), inv(Equation::Extraordinary, earlier, tl)));
  r.add("extraordinary_boost", inv(Equation::Extraordinary, boost, tl));
  r.add("extraordinary_rotation", inv(Equation::Extraordinary, rot, rtl));
  r.add("extraordinary_dilatation", inv(Equation::Extraordinary, Dilatation{1.25}, tl));
  r.add("extraordinary_special_conformal",
        std::max(inv(Equation::Extraordinary, SpecialConformal{0.6 / c.T()}, tl),
                 inv(Equation::Extraordinary, SpecialConformal{-0.5 / c.T()}, tl)));

  const double n0 = norm2(tl);
  r.add("unitarity_free", std::abs(norm2(evolve(Equation::Extraordinary, k, tl, t2, 1000)) - n0));
  if (!k.is_galilei()) {
    GridState h = tl;
    h.chart = Chart::Static;
    r.add("unitarity_harmonic", std::abs(norm2(evolve(Equation::Harmonic, k, h, t2, 1000)) - n0));
  }

  std::vector<GridState> tls, ords;
  for (double t : five(0.5 * T, 1e-3 * T)) {
    tls.push_back(evolve(Equation::Extraordinary, k, tl, t, 5));
    ords.push_back(gauge_map(GaugeDirection::TildeToPsi, k, tls.back()));
  }
  r.add("continuity_invariant", density_report(Representation::PsiTilde, k, tls).continuity_residual);
  r.add("continuity_ordinary", density_report(Representation::PsiOrdinary, k, ords).continuity_residual);

  // rho~ = |psi|^2 is a scalar: compare with the closed form at group pre-images
  struct Case {
    Symmetry s;
    const GridState& tilde;
    const GridState& ordinary;
    const Point& center;
    const Point& momentum;
    double width;
  };
  std::vector<Case> cases;
  for (const auto& s : {shift, later, earlier, boost}) cases.push_back({s, tl, psi, x0, p0, su.width});
  if (d >= 2) cases.push_back({rot, rtl, rpsi, rx0, rp0, rs.width});
  double scalar = 0.0;
  for (const auto& cs : cases) {
    const auto img = symmetry_transform(cs.s, Representation::PsiOrdinary, k, cs.ordinary);
    const auto img_t = symmetry_transform(cs.s, Representation::PsiTilde, k, cs.tilde);
    const NHTransform gi = invert(k, as_group_element(cs.s, img.grid.dim));
    const double tp = img.time, wt = std::pow(sigma(k, tp), img.grid.dim / 2.0);
    for (std::size_t j = 0; j < img.grid.size(); ++j) {
      const auto e = apply(k, gi, beltrami_event(tp, Point(img.grid.point(j))));
      const double rho = std::pow(sigma(k, e.time), img.grid.dim / 2.0) *
                         std::norm(gaussian_packet(e.space, e.time, cs.center, cs.momentum, cs.width, hbar, m));
      const auto jj = static_cast<Eigen::Index>(j);
      scalar = std::max({scalar, std::abs(std::norm(img.values[jj]) - rho),
                         std::abs(wt * std::norm(img_t.values[jj]) - rho)});
    }
  }
  r.add("rho_invariance", scalar);

  double jacobian = 0.0;
  const double kc = 0.7 / c.T();
  for (const Symmetry& s : {Symmetry{Dilatation{1.3}}, Symmetry{SpecialConformal{kc}}}) {
    const auto img = symmetry_transform(s, Representation::PsiTilde, k, tl);
    const double jac = std::holds_alternative<Dilatation>(s) ? 1.3 : 1.0 / (1.0 - kc * t1);  // dx'/dx
    for (std::size_t j = 0; j < g.size(); ++j) {
      const Point x = g.point(j) / jac;
      jacobian = std::max(jacobian, std::abs(std::pow(jac, d) * std::norm(img.values[static_cast<Eigen::Index>(j)]) -
                                             std::norm(gaussian_packet(x, t1, x0, p0, su.width, hbar, m))));
    }
  }
  r.add("rho_jacobian", jacobian);

  const GridState& tm = tls[2];
  const GridState& pm = ords[2];
  const double dv = g.cell_volume();
  r.add("norm_relation", dv * std::abs(pm.values.squaredNorm() - std::pow(sigma(k, tm.time), d / 2.0) * tm.values.squaredNorm()));
  auto ordinary_norm = [&](const GridState& s) {
    return inner_product(Pairing::OrdinaryNorm, Representation::PsiOrdinary, k, s, s).real();
  };
  r.add("ordinary_norm", std::abs(ordinary_norm(evolve(Equation::OrdinaryNH, k, psi, t2, 10)) - ordinary_norm(psi)));
}

void duality_suite(Context& c, Recorder& r) {
  const auto& k = c.kind;
  const int d = c.d;
  const double T = c.T(), hbar = c.cfg.hbar, m = c.cfg.mass, nu = k.nu();
  const GridSpec g = duality_grid(d);

  // box-commensurate p/hbar keeps the periodic pullback of the plane wave exact
  const Point p = Point::Constant(d, hbar * 2 * kPi * 6 / g.length);
  const double tau = 0.6 * T, t = beltrami_time(k, tau);
  const auto wave = sample(Chart::Beltrami, t, g, hbar, m, [&](const Point& x) { return plane_wave(x, t, p, hbar, m); });
  const auto img = duality_map(DualityDirection::TildeToHarmonic, k, wave, {ResamplePolicy::Periodic});
  double pw = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const Point q = g.point(j);
    const double pq = p.dot(q), p2 = p.squaredNorm(), q2 = q.squaredNorm();
    Complex expect;
    if (k.is_nh()) {
      const double sech = 1 / std::cosh(nu * tau), th = std::tanh(nu * tau);
      expect = std::pow(sech, d / 2.0) * std::polar(1.0, (pq * sech - (p2 / (2 * m * nu) - 0.5 * m * nu * q2) * th) / hbar);
    } else {
      const double sec = 1 / std::cos(nu * tau), tn = std::tan(nu * tau);
      expect = std::pow(sec, d / 2.0) * std::polar(1.0, (pq * sec - (p2 / (2 * m * nu) + 0.5 * m * nu * q2) * tn) / hbar);
    }
    pw = std::max(pw, std::abs(img.values[static_cast<Eigen::Index>(j)] - expect));
  }
  r.add("plane_wave_image", pw);

  if (k.is_anh()) {
    AnalyticParams ap;
    ap.kind = k;
    ap.grid = g;
    ap.time = 0.5 * T;
    ap.hbar = hbar;
    ap.mass = m;
    const auto free = duality_map(DualityDirection::HarmonicToTilde, k, analytic_state(AnalyticState::OscGroundANH, ap));
    const Complex z(1.0, nu * free.time);
    double gs = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const Complex expect = std::pow(z, -d / 2.0) * std::exp(-m * nu * g.point(j).squaredNorm() / (2.0 * hbar * z));
      gs = std::max(gs, std::abs(free.values[static_cast<Eigen::Index>(j)] - expect));
    }
    r.add("ground_state_image", gs);
  }

  const auto start = packet(g, 0.0, Point::Constant(d, 0.3), Point::Constant(d, -0.4), 1.0, hbar, m);
  std::vector<GridState> osc;
  for (double s : five(0.5 * T, 1e-3 * T))
    osc.push_back(duality_map(DualityDirection::TildeToHarmonic, k,
                              evolve(Equation::Extraordinary, k, start, beltrami_time(k, s), 20)));
  r.add("forward_residual", equation_residual(WaveEquation::Harmonic, k, osc));

  // the reverse direction runs the Strang stepper, 4000 steps per sample
  if (d <= 2) {
    GridState h0 = start;
    h0.chart = Chart::Static;
    std::vector<GridState> fr;
    for (double s : five(0.4 * T, 1e-3 * T))
      fr.push_back(duality_map(DualityDirection::HarmonicToTilde, k,
                               evolve(Equation::Harmonic, k, h0, proper_time(k, s), 4000)));
    r.add("backward_residual", equation_residual(WaveEquation::Extraordinary, k, fr));
  }
}

}  // namespace nhlab::verify::detail
