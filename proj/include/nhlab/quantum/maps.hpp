#pragma once

// Exact maps between the three wave functions.
//
//   psi(t, x) = sigma^{d/4} exp(i s m nu^2 t x^2 / 2 hbar sigma) psi~(t, x)
//
// and the oscillator wave function is psi read in static coordinates,
// psi_h(tau, q) = psi(t, q sigma^{1/2}).

#include "nhlab/quantum/grid.hpp"
#include "nhlab/quantum/spectral.hpp"

namespace nhlab::quantum {

enum class GaugeDirection { PsiToTilde, TildeToPsi };

/// Which part of the gauge factor to apply.
enum class GaugePart { Full, PhaseOnly, ScaleOnly };

/// Pointwise gauge factor sigma^{d/4} e^{i s m nu^2 t x^2/(2 hbar sigma)} at (t, x).
Complex gauge_factor(const SpacetimeKind& kind, double t, const Point& x, double hbar, double mass,
                     GaugePart part = GaugePart::Full);

/// Beltrami chart only. TildeToPsi multiplies by the factor, PsiToTilde divides.
GridState gauge_map(GaugeDirection dir, const SpacetimeKind& kind, const GridState& state,
                    GaugePart part = GaugePart::Full);

enum class DualityDirection { TildeToHarmonic, HarmonicToTilde };

/// psi~ (Beltrami, t) <-> psi_h (static, tau) with q = x / sigma^{1/2}. The image lives on
/// `out` when given, otherwise on the source grid.
GridState duality_map(DualityDirection dir, const SpacetimeKind& kind, const GridState& state,
                      const ResampleOptions& opts = {}, const GridSpec* out = nullptr);

}  // namespace nhlab::quantum
