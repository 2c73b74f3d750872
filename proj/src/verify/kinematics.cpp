#include <algorithm>
#include <cmath>
#include <numbers>

#include "nhlab/algebra/brackets.hpp"
#include "nhlab/anomalous.hpp"
#include "nhlab/classical/mechanics.hpp"
#include "nhlab/gravity.hpp"
#include "suites.hpp"

namespace nhlab::verify::detail {

namespace {

constexpr double kPi = std::numbers::pi;

double event_distance(const Event& a, const Event& b) {
  return std::max(std::abs(a.time - b.time), (a.space - b.space).cwiseAbs().maxCoeff());
}

// |log2(coarse/fine) - order|; infinite when the errors do not decrease.
double order_deviation(double coarse, double fine, double order) {
  if (!(coarse > 0.0) || !(fine > 0.0)) return std::numeric_limits<double>::infinity();
  return std::abs(std::log2(coarse / fine) - order);
}

AnomalousConnection connection(const SpacetimeKind& k, double c) {
  return k.is_galilei() ? AnomalousConnection::galilei(c) : AnomalousConnection::make(k, c);
}

// Smooth non-trivial path with time measured in units of T.
struct WigglyPath {
  V c0, c1, c2;
  double w, T;
  V x(double t) const { return c0 + c1 * (t / T) + c2 * std::sin(w * t / T); }
};

}  // namespace

void brackets_suite(Context& c, Recorder& r) {
  using namespace algebra;
  std::vector<BracketTable> tables{BracketTable::NHAlgebra, BracketTable::ExtendedNH};
  if (!c.kind.is_galilei()) {
    tables.push_back(BracketTable::Ladder);
    tables.push_back(BracketTable::SO12);
  }
  BracketOptions o;
  o.samples = c.cfg.samples;
  o.seed = c.rng();
  o.dim = c.d;
  o.hbar = c.cfg.hbar;
  o.mass = c.cfg.mass;
  o.tol = tolerance_of(c.cfg, "brackets", "bracket");
  for (auto table : tables) {
    const auto rep = verify_bracket_table(c.kind, table, o);
    for (const auto& e : rep.entries)
      r.add("bracket", e.max_abs_deviation, to_string(table) + ": " + e.bracket, e.bracket + " = " + e.expected);
  }

  using G = GeneratorName;
  std::vector<GeneratorId> ids{{G::H}, {G::GalileiTime}};
  for (int i = 0; i < c.d; ++i) {
    ids.push_back({G::P, i});
    ids.push_back({G::K, i});
  }
  if (c.d >= 2) ids.push_back({G::J, 0, 1});
  if (!c.kind.is_galilei()) {
    ids.push_back({G::Dilatation});
    ids.push_back({G::Conformal});
  }
  std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
  std::vector<Chart> charts{Chart::Beltrami};
  if (!c.kind.is_galilei()) charts.push_back(Chart::Static);
  double worst = 0.0;
  for (Chart chart : charts) {
    BracketOptions po = o;
    po.samples = 100;
    const auto pts = sample_points(chart, c.kind, po);
    RealizeOptions ro;
    ro.extended = true;
    ro.hbar = c.cfg.hbar;
    ro.mass = c.cfg.mass;
    for (int n = 0; n < 20; ++n) {
      const auto x = realize(ids[pick(c.rng)], chart, c.kind, c.d, ro);
      const auto y = realize(ids[pick(c.rng)], chart, c.kind, c.d, ro);
      const auto z = realize(ids[pick(c.rng)], chart, c.kind, c.d, ro);
      worst = std::max(worst, jacobi_deviation(x, y, z, pts));
    }
  }
  r.add("jacobi", worst);
}

void group_suite(Context& c, Recorder& r) {
  const auto& k = c.kind;
  const int d = c.d;
  const double T = c.T();
  double compose_dev = 0.0, inverse_dev = 0.0;
  for (int n = 0; n < c.cfg.samples; ++n) {
    const auto g1 = c.element(d, 0.5), g2 = c.element(d, 0.5);
    const auto e = beltrami_event(0.5 * T * c.uniform(), c.vec(d, 2.0));
    const auto seq = apply(k, g2, apply(k, g1, e));
    compose_dev = std::max(compose_dev, event_distance(apply(k, compose(k, g2, g1), e), seq) /
                                            std::max(1.0, seq.space.norm()));
    inverse_dev = std::max(inverse_dev, event_distance(apply(k, invert(k, g1), apply(k, g1, e)), e));
  }
  r.add("compose_apply", compose_dev);
  r.add("inverse", inverse_dev);

  // second differences of the image of x0 + v dt + acc dt^2/2, differentiated in t'
  double v_dev = 0.0, a_dev = 0.0;
  const int kin = std::max(10, c.cfg.samples / 5);
  for (int n = 0; n < kin; ++n) {
    const auto g = c.element(d, 0.6);
    const double t0 = 0.3 * T * c.uniform();
    const V x0 = c.vec(d, 1), v = c.vec(d, 1), acc = c.vec(d, 1);
    auto image = [&](double t) {
      const double dt = t - t0;
      return apply(k, g, beltrami_event(t, V(x0 + v * dt + 0.5 * acc * dt * dt)));
    };
    const double h = 1e-3 * T;
    const auto em = image(t0 - h), e0 = image(t0), ep = image(t0 + h);
    const V dxdt = (ep.space - em.space) / (2 * h);
    const double dtp = (ep.time - em.time) / (2 * h);
    const V d2x = (ep.space - 2 * e0.space + em.space) / (h * h);
    const double d2t = (ep.time - 2 * e0.time + em.time) / (h * h);
    const V v_fd = dxdt / dtp;
    const V a_fd = (d2x * dtp - dxdt * d2t) / (dtp * dtp * dtp);
    const auto e = beltrami_event(t0, x0);
    v_dev = std::max(v_dev, (transform_velocity(k, g, e, v) - v_fd).cwiseAbs().maxCoeff());
    a_dev = std::max(a_dev, (transform_acceleration(k, g, e, v, acc) - a_fd).cwiseAbs().maxCoeff() * T);
  }
  r.add("velocity_law", v_dev);
  r.add("acceleration_law", a_dev);

  double tau_dev = 0.0, line_dev = 0.0;
  for (int n = 0; n < c.cfg.samples; ++n) {
    const auto g = c.element(d, 0.5);
    const double t1 = 0.4 * T * c.uniform(), t2 = 0.4 * T * c.uniform();
    const auto e1 = apply(k, g, beltrami_event(t1, c.vec(d, 1)));
    const auto e2 = apply(k, g, beltrami_event(t2, c.vec(d, 1)));
    const double before = proper_time(k, t2) - proper_time(k, t1);
    const double after = proper_time(k, e2.time) - proper_time(k, e1.time);
    tau_dev = std::max(tau_dev, std::abs(before - after) / T);

    const V x0 = c.vec(d, 1), v = c.vec(d, 1);
    std::vector<Event> img;
    for (double t : {-0.3 * T, 0.0, 0.2 * T}) img.push_back(apply(k, g, beltrami_event(t, V(x0 + v * t))));
    const V slope = (img[1].space - img[0].space) / (img[1].time - img[0].time);
    const V predicted = img[1].space + slope * (img[2].time - img[1].time);
    line_dev = std::max(line_dev, (predicted - img[2].space).cwiseAbs().maxCoeff());
  }
  r.add("proper_time", tau_dev);
  r.add("uniform_motion", line_dev);
}

void classical_suite(Context& c, Recorder& r) {
  using namespace classical;
  const auto& k = c.kind;
  const int d = c.d;
  const double T = c.T(), m = c.cfg.mass;
  const WigglyPath p{c.vec(d, 1), c.vec(d, 1), c.vec(d, 1), 2.0 + c.uniform(), T};
  auto path = [&](int n) {
    return sample_path(Chart::Beltrami, -0.6 * T, 0.6 * T, n, [&](double t) { return p.x(t); });
  };
  // 10^4 intervals, then one refinement
  const auto coarse = path(10001), fine = path(20001);
  const double td1 = total_derivative_check(k, m, coarse), td2 = total_derivative_check(k, m, fine);
  r.add("total_derivative", td1);
  if (!k.is_galilei()) r.add("total_derivative_order", order_deviation(td1, td2, 2.0));
  const V a = c.vec(d, 1);
  const double ts1 = translation_shift_check(k, m, a, coarse), ts2 = translation_shift_check(k, m, a, fine);
  r.add("translation_shift", ts1);
  if (!k.is_galilei()) r.add("translation_shift_order", order_deviation(ts1, ts2, 2.0));

  // p = m v at t = 0 gives x0 + v t
  const V x0 = c.vec(d, 0.5), v = c.vec(d, 0.8);
  auto err = [&](int steps) {
    const auto pth = integrate_eom(k, m, {0.0, x0, V(m * v)}, 0.9 * T, steps);
    double e = 0.0;
    for (std::size_t j = 0; j < pth.size(); ++j)
      e = std::max(e, (pth.positions[j] - (x0 + v * pth.times[j])).cwiseAbs().maxCoeff());
    return e;
  };
  const double e1 = err(40), e2 = err(80);
  r.add("eom_straight_line", e2);
  if (!k.is_galilei()) {
    r.add("eom_order", order_deviation(e1, e2, 4.0));
    const auto stat = integrate_static_oscillator(k, 0.0, c.vec(d, 0.5), c.vec(d, 0.5), 1.2 * T, 4000);
    r.add("static_oscillator", line_fit_residual(static_to_beltrami(k, stat)));
  }
}

void geodesics_suite(Context& c, Recorder& r) {
  const auto& k = c.kind;
  const int d = c.d;
  const double T = c.T();
  const double c_range = k.is_galilei() ? 1.0 : 2.0;

  double line = 0.0, fi = 0.0;
  for (int n = 0; n < 50; ++n) {
    const auto conn = connection(k, n == 0 ? c.cfg.C : c_range * c.uniform());
    const GeodesicState init{0.3 * T * c.uniform(), c.vec(d, 1), 1.0 + 0.5 * c.uniform(), c.vec(d, 1)};
    const auto traj = integrate_geodesic(conn, init, lambda_span(conn, init, init.t + 0.6 * T), 4000);
    line = std::max(line, straight_line_residual(traj));
    fi = std::max(fi, first_integral_spread(conn, traj));
  }
  r.add("straight_line", line);
  r.add("first_integral", fi);

  std::vector<double> ts;
  for (int n = 0; n <= 40; ++n) ts.push_back(T * (-0.4 + 0.8 * n / 40.0));
  double lam = 0.0;
  for (int n = 0; n < 100; ++n) {
    const auto conn = connection(k, n == 0 ? c.cfg.C : c_range * c.uniform());
    lam = std::max(lam, lambda_transform_check(conn, NHTransform::time_translation(d, 0.4 * T * c.uniform()), ts).residual());
  }
  r.add("lambda_transform", lam);

  double curv = 0.0;
  for (int n = 0; n < 30; ++n) {
    const int dd = 1 + n % 3;
    const auto conn = connection(k, n == 0 ? c.cfg.C : c_range * c.uniform());
    const double t = 0.6 * T * c.uniform();
    const auto cf = curvature(conn, t, dd);
    const auto fd = finite_difference_riemann(conn, t, dd, 1e-5 * T);
    const int D = dd + 1;
    double ricci = 0.0;
    for (int a = 0; a < D; ++a)
      for (int s = 0; s < D; ++s)
        for (int mu = 0; mu < D; ++mu)
          for (int nu = 0; nu < D; ++nu) {
            double expect = 0.0;
            if (a > 0 && s == 0) expect = cf.r_i_ttj * ((mu == 0 && nu == a) - (mu == a && nu == 0));
            const double v = fd[static_cast<std::size_t>(((a * D + s) * D + mu) * D + nu)];
            curv = std::max(curv, std::abs(v - expect) * T * T);
            if (a == mu && s == 0 && nu == 0) ricci += v;
          }
    curv = std::max(curv, std::abs(ricci - cf.r_tt) * T * T);
  }
  r.add("curvature_fd", curv);

  if (k.is_nh()) {
    double flat = 0.0;
    for (double cc : {1.0, -1.0})
      for (double t : {-0.5 * T, 0.0, 0.8 * T}) {
        const auto cv = curvature(AnomalousConnection::make(k, cc), t, d);
        flat = std::max({flat, std::abs(cv.r_i_ttj), std::abs(cv.r_tt)});
      }
    r.add("flat_closed_form", flat);

    const auto conn = AnomalousConnection::make(k, 1.0);
    double affine = 0.0;
    for (int n = 0; n < 20; ++n) {
      const GeodesicState init{0.3 * T * c.uniform(), c.vec(d, 1), 1.0 + 0.5 * c.uniform(), c.vec(d, 1)};
      const auto traj = integrate_geodesic(conn, init, lambda_span(conn, init, init.t + 0.5 * T), 1000);
      const auto e0 = beltrami_to_linear(k, beltrami_event(traj.states.front().t, traj.states.front().x));
      const auto e1 = beltrami_to_linear(k, beltrami_event(traj.states.back().t, traj.states.back().x));
      const double l0 = traj.lambda.front(), l1 = traj.lambda.back();
      for (std::size_t j = 0; j < traj.states.size(); ++j) {
        const double w = (traj.lambda[j] - l0) / (l1 - l0);
        const auto e = beltrami_to_linear(k, beltrami_event(traj.states[j].t, traj.states[j].x));
        affine = std::max(affine, std::abs(e.time - (e0.time + w * (e1.time - e0.time))) / T);
        affine = std::max(affine, (e.space - (e0.space + w * (e1.space - e0.space))).cwiseAbs().maxCoeff());
      }
    }
    r.add("linear_chart_affine", affine);

    // lambda = t/(1 - nu t): d tau/d lambda = (1/sigma) dt/dlambda, dt/dlambda = (1 + nu lambda)^-2
    const double nu = k.nu();
    double metric = 0.0;
    for (double lam_n : {-0.3, 0.0, 0.5, 2.0, 40.0}) {
      const double l = lam_n / nu, t = l / (1 + nu * l);
      const double chain = proper_time_rate(k, t) / ((1 + nu * l) * (1 + nu * l));
      metric = std::max(metric, std::abs(chain - 1.0 / (1 + 2 * nu * l)));
    }
    r.add("linear_metric", metric);
  }

  if (!k.is_galilei()) {
    const auto pts = galilei_contraction_check(k.variant(), 0.5, std::vector<double>{1e-1, 1e-2, 1e-3}, 1.0, d);
    bool monotone = true;
    for (std::size_t i = 1; i < pts.size(); ++i)
      monotone = monotone && pts[i].connection_error < pts[i - 1].connection_error &&
                 pts[i].ricci_error < pts[i - 1].ricci_error;
    r.add("galilei_contraction",
          monotone ? pts.back().connection_error : std::numeric_limits<double>::infinity());
  }
}

void gravity_suite(Context& c, Recorder& r) {
  using namespace gravity;
  const auto& k = c.kind;
  const double GM = c.cfg.G * c.cfg.M;
  const double T = c.T();
  auto v3 = [](double a, double b, double cc) { return V((V(3) << a, b, cc).finished()); };

  // nu -> 0: the same variant at nu = 1e-6 against the fixed-source Kepler solution
  const auto small = k.is_galilei() ? k : SpacetimeKind::make(k.variant(), 1e-6);
  const auto src0 = PointSource::fixed(c.cfg.M, V::Zero(3), c.cfg.G);
  const double vp = 1.2 * std::sqrt(GM), a = 1.0 / (2.0 - vp * vp / GM), e = 1.0 - 1.0 / a;
  const double period = 2 * kPi * std::sqrt(a * a * a / GM), mean_motion = std::sqrt(GM / (a * a * a));
  const auto orb = integrate_orbit(small, src0, {0.0, v3(1, 0, 0), v3(0, vp, 0)}, period, 40000);
  double kep = 0.0;
  for (std::size_t j = 0; j < orb.size(); j += 97) {
    const double mm = mean_motion * orb.times[j];
    double ea = mm;
    for (int it = 0; it < 50; ++it) ea -= (ea - e * std::sin(ea) - mm) / (1 - e * std::cos(ea));
    const V expect = v3(a * (std::cos(ea) - e), a * std::sqrt(1 - e * e) * std::sin(ea), 0.0);
    kep = std::max(kep, (orb.positions[j] - expect).cwiseAbs().maxCoeff());
  }
  kep = std::max(kep, (orb.positions.back() - v3(1, 0, 0)).cwiseAbs().maxCoeff());
  r.add("kepler", kep);
  const auto circ = integrate_orbit(small, src0, {0.0, v3(1, 0, 0), v3(0, std::sqrt(GM), 0)},
                                    2 * kPi / std::sqrt(GM), 4000);
  double drift = 0.0;
  for (const auto& x : circ.positions) drift = std::max(drift, std::abs(x.norm() - 1.0));
  r.add("kepler_circular", drift);

  const auto src = PointSource::fixed(c.cfg.M, v3(0.2, -0.1, 0.4), c.cfg.G);
  double flux = 0.0, radius = 0.0;
  for (double t : {0.0, 0.6 * T}) {
    const auto f1 = divergence_check(k, src, t, 1.0, 64, v3(0.3, 0.1, -0.2));
    const auto f2 = divergence_check(k, src, t, 2.5, 64, v3(0.3, 0.1, -0.2));
    flux = std::max({flux, std::abs(f1.flux / f1.expected - 1.0), std::abs(f2.flux / f2.expected - 1.0)});
    radius = std::max(radius, std::abs(f1.flux - f2.flux) / f1.expected);
  }
  r.add("gauss_flux", flux);
  r.add("flux_radius_independence", radius);

  // covariance on a window short enough for the transformed chart
  const double window = k.is_galilei() ? 1.0 : std::min(1.0, 0.2 / k.nu());
  const double at_max = k.is_galilei() ? 1.5 : std::min(1.5, 0.3 / k.nu());
  const int steps = std::max(300, static_cast<int>(std::lround(3000 * window)));
  const PointSource moving{c.cfg.M, c.cfg.G, [](double t) { return V(V((V(3) << 0.1, -0.05, 0.02).finished()) * t); }};
  double raw = 0.0, cov = 0.0, rot = 0.0;
  for (const PointSource* s : {&src0, &moving}) {
    const auto o = integrate_orbit(k, *s, {-window, v3(1, 0, 0.1), v3(0, std::sqrt(GM), 0)}, window, steps);
    const double base = law_residual(k, *s, o);
    raw = std::max(raw, base);
    const M rm = c.rotation(3);
    rot = std::max(rot, std::abs(covariance_check(k, NHTransform::pure_rotation(rm), *s, o) - base));
    for (int n = 0; n < 10; ++n) {
      const NHTransform g{c.rotation(3), at_max * c.uniform(), c.vec(3, 1.0), c.vec(3, 0.5)};
      cov = std::max(cov, covariance_check(k, g, *s, o));
    }
  }
  r.add("law_residual", raw);
  r.add("covariance", cov);
  r.add("rotation_covariance", rot);

  const OrbitState init{0.1 * T, v3(1, 0.2, 0), v3(0, 0.9, 0.1)};
  const auto o0 = integrate_orbit(connection(k, 0.0), src, init, 0.5 * T, 300);
  const auto o1 = integrate_orbit(connection(k, c.cfg.C), src, init, 0.5 * T, 300);
  double cdev = 0.0;
  for (std::size_t j = 0; j < o0.size(); ++j)
    cdev = std::max(cdev, (o0.positions[j] - o1.positions[j]).cwiseAbs().maxCoeff());
  r.add("c_independence", cdev);

  r.add("divergence", std::abs(field_divergence(k, src, 0.3 * T, V(src.position(0.0) + v3(2, 0, 0)))));
  r.add("curl", field_curl(k, src, 0.3 * T, v3(1, 1.5, -0.7)).cwiseAbs().maxCoeff());
}

}  // namespace nhlab::verify::detail
