#include "nhlab/quantum/symmetry.hpp"

#include <cmath>
#include <functional>

#include <Eigen/LU>

#include "nhlab/quantum/maps.hpp"

namespace nhlab::quantum {

namespace {

template <typename... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <typename... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

// x = a x' + b at fixed t, plus the psi~ factor as a function of the pre-image x.
struct Pullback {
  double t_image;
  Eigen::MatrixXd a;
  Point b;
  std::function<Complex(const Point&)> factor;
};

void require_dim(const Point& v, int d, const char* what) {
  if (v.size() != d) throw InvalidArgument(std::string("symmetry_transform: ") + what + " has wrong dimension");
}

Pullback tilde_pullback(const Symmetry& g, const SpacetimeKind& kind, const GridState& s) {
  const int d = s.dim();
  const double t = s.time, hbar = s.hbar, m = s.mass, dd = d;
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(d, d);
  const auto one = [](const Point&) { return Complex(1.0); };
  return std::visit(
      Overloaded{
          [&](const SpaceTranslation& p) -> Pullback {
            require_dim(p.a, d, "shift");
            return {t, eye, p.a, one};
          },
          [&](const TimeTranslation& p) -> Pullback {
            if (!in_beltrami_domain(kind, p.a_t)) throw DomainError("time translation: |a^t| >= 1/nu");
            const double sa = sigma(kind, p.a_t), sat = sigma_mix(kind, p.a_t, t);
            if (std::abs(sat) < kDomainGuard) throw SingularTransform("time translation: sigma(a^t, t) = 0");
            if (sat < 0.0) throw DomainError("time translation: sigma(a^t, t) < 0");
            const double amp = std::pow(sat, dd / 2.0) / std::pow(sa, dd / 4.0);
            const double chirp = kind.signed_nu2() * m * p.a_t / (2.0 * hbar * sat);
            return {(t - p.a_t) / sat, eye * (sat / std::sqrt(sa)), Point::Zero(d),
                    [=](const Point& x) { return std::polar(amp, chirp * x.squaredNorm()); }};
          },
          [&](const GalileanBoost& p) -> Pullback {
            require_dim(p.u, d, "boost");
            const Point u = p.u;
            return {t, eye, u * t, [=](const Point& x) {
                      return std::polar(1.0, (-m * u.dot(x) + 0.5 * m * u.squaredNorm() * t) / hbar);
                    }};
          },
          [&](const Rotation& p) -> Pullback {
            if (p.o.rows() != d || p.o.cols() != d) throw InvalidArgument("rotation: wrong shape");
            if ((p.o.transpose() * p.o - eye).cwiseAbs().maxCoeff() > 1e-12 ||
                std::abs(p.o.determinant() - 1.0) > 1e-12)
              throw InvalidArgument("rotation: matrix is not in SO(d)");
            return {t, p.o.transpose(), Point::Zero(d), one};
          },
          [&](const Dilatation& p) -> Pullback {
            if (!(p.factor > 0.0)) throw DomainError("dilatation: D must be positive");
            const double amp = std::pow(p.factor, -dd / 2.0);
            return {p.factor * p.factor * t, eye / p.factor, Point::Zero(d),
                    [=](const Point&) { return Complex(amp); }};
          },
          [&](const SpecialConformal& p) -> Pullback {
            const double w = 1.0 - p.k * t;
            if (std::abs(w) < kDomainGuard) throw SingularTransform("special conformal: 1 - k t = 0");
            if (w < 0.0) throw DomainError("special conformal: 1 - k t < 0");
            const double amp = std::pow(w, dd / 2.0), chirp = m * p.k / (2.0 * hbar * w);
            return {t / w, eye * w, Point::Zero(d),
                    [=](const Point& x) { return std::polar(amp, chirp * x.squaredNorm()); }};
          },
      },
      g);
}

GridState apply_pullback(const Pullback& pb, const GridState& s, const ResampleOptions& opts) {
  GridState out = s;
  out.time = pb.t_image;
  out.values = resample_affine(s, s.grid, pb.a, pb.b, opts);
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    const Point x = pb.a * s.grid.point(k) + pb.b;
    out.values[static_cast<Eigen::Index>(k)] *= pb.factor(x);
  }
  if (opts.policy == ResamplePolicy::Localized)
    require_contained(out, opts.boundary_eps, "symmetry_transform (image)");
  return out;
}

}  // namespace

std::string name(const Symmetry& g) {
  return std::visit(Overloaded{
                        [](const SpaceTranslation&) { return std::string("space_translation"); },
                        [](const TimeTranslation&) { return std::string("time_translation"); },
                        [](const GalileanBoost&) { return std::string("boost"); },
                        [](const Rotation&) { return std::string("rotation"); },
                        [](const Dilatation&) { return std::string("dilatation"); },
                        [](const SpecialConformal&) { return std::string("special_conformal"); },
                    },
                    g);
}

double image_time(const Symmetry& g, const SpacetimeKind& kind, double t) {
  return std::visit(Overloaded{
                        [&](const TimeTranslation& p) { return (t - p.a_t) / sigma_mix(kind, p.a_t, t); },
                        [&](const Dilatation& p) { return p.factor * p.factor * t; },
                        [&](const SpecialConformal& p) { return t / (1.0 - p.k * t); },
                        [&](const auto&) { return t; },
                    },
                    g);
}

GridState symmetry_transform(const Symmetry& g, Representation rep, const SpacetimeKind& kind,
                             const GridState& state, const ResampleOptions& opts) {
  validate(state);
  if (state.chart != Chart::Beltrami)
    throw ChartMismatch("symmetry_transform: finite transformations act on the Beltrami chart");
  require_beltrami_domain(kind, state.time, "symmetry_transform");
  Pullback pb = tilde_pullback(g, kind, state);
  require_beltrami_domain(kind, pb.t_image, "symmetry_transform (image time)");
  if (rep == Representation::PsiTilde) return apply_pullback(pb, state, opts);

  if (std::holds_alternative<Dilatation>(g) || std::holds_alternative<SpecialConformal>(g))
    throw Unsupported("symmetry_transform: " + name(g) + " acts on psi~ only");
  if (const auto* p = std::get_if<SpaceTranslation>(&g)) {
    const double t = state.time, c = kind.signed_nu2() * state.mass * t / (state.hbar * sigma(kind, t));
    const Point a = p->a;
    pb.factor = [=](const Point& x) { return std::polar(1.0, -c * a.dot(x) + 0.5 * c * a.squaredNorm()); };
    return apply_pullback(pb, state, opts);
  }
  if (std::holds_alternative<TimeTranslation>(g)) {
    pb.factor = [](const Point&) { return Complex(1.0); };
    return apply_pullback(pb, state, opts);
  }
  // boost and rotation: conjugate the psi~ rule by the gauge map
  const GridState tilde = gauge_map(GaugeDirection::PsiToTilde, kind, state);
  return gauge_map(GaugeDirection::TildeToPsi, kind, apply_pullback(pb, tilde, opts));
}

double invariance_residual(Equation eq, const Symmetry& g, const SpacetimeKind& kind,
                           const GridState& initial, double t2, int steps, const ResampleOptions& ropts,
                           const EvolveOptions& eopts) {
  if (eq == Equation::Harmonic)
    throw Unsupported("invariance_residual: finite transformations are not defined in static coordinates");
  const Representation rep =
      eq == Equation::OrdinaryNH ? Representation::PsiOrdinary : Representation::PsiTilde;
  const double t2_image = image_time(g, kind, t2);
  const GridState a = symmetry_transform(g, rep, kind, evolve(eq, kind, initial, t2, steps, eopts), ropts);
  const GridState b = evolve(eq, kind, symmetry_transform(g, rep, kind, initial, ropts), t2_image, steps, eopts);
  return relative_l2_distance(a, b);
}

}  // namespace nhlab::quantum
