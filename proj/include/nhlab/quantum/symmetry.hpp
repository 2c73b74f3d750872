#pragma once

// Finite symmetry transformations of grid states and the evolve/transform
// commutation test.
//
// Each transformation maps (t, x) to (t', x'); a state at t is sent to a state
// at t' by psi'(t', x') = factor(t, x) psi(t, x), read at the pre-images
// x = A x' + b of the grid points and resampled spectrally.
//
// psi~ factors:
//   space translation    1
//   time translation     sigma(a,t)^{d/2} sigma(a)^{-d/4} e^{i s m nu^2 a x^2/(2 hbar sigma(a,t))}
//   boost                e^{(i/hbar)(-m u.x + m u^2 t/2)}
//   rotation             1
//   dilatation           D^{-d/2}                                  t' = D^2 t, x' = D x
//   special conformal    (1-kt)^{d/2} e^{i m k x^2/(2 hbar (1-kt))}  t' = t/(1-kt), x' = x/(1-kt)
// psi factors:
//   space translation    e^{(i/hbar)(-s m nu^2 t a.x/sigma + s m nu^2 t a^2/(2 sigma))}
//   time translation     1
//   boost, rotation      gauge conjugates of the psi~ rules
// Dilatation and the special conformal map act on psi~ only.

#include <string>
#include <variant>

#include "nhlab/quantum/evolve.hpp"
#include "nhlab/quantum/grid.hpp"
#include "nhlab/quantum/spectral.hpp"

namespace nhlab::quantum {

struct SpaceTranslation {
  Point a;
};
struct TimeTranslation {
  double a_t = 0.0;
};
struct GalileanBoost {
  Point u;
};
struct Rotation {
  Eigen::MatrixXd o;  // SO(d)
};
struct Dilatation {
  double factor = 1.0;  // D > 0
};
struct SpecialConformal {
  double k = 0.0;
};

using Symmetry =
    std::variant<SpaceTranslation, TimeTranslation, GalileanBoost, Rotation, Dilatation, SpecialConformal>;

std::string name(const Symmetry& g);

/// Image time t' of a state at t.
double image_time(const Symmetry& g, const SpacetimeKind& kind, double t);

/// Throws DomainError/SingularTransform for parameters outside their domain,
/// Unsupported for dilatation and the special conformal map on psi.
GridState symmetry_transform(const Symmetry& g, Representation rep, const SpacetimeKind& kind,
                             const GridState& state, const ResampleOptions& opts = {});

/// Normalised L2 distance between transform(evolve(initial -> t2)) and
/// evolve(transform(initial) -> t2'). OrdinaryNH pairs with psi, Extraordinary with psi~.
double invariance_residual(Equation eq, const Symmetry& g, const SpacetimeKind& kind,
                           const GridState& initial, double t2, int steps,
                           const ResampleOptions& ropts = {}, const EvolveOptions& eopts = {});

}  // namespace nhlab::quantum
