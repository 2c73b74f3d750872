#pragma once

// Probability densities, flux and the two pairings.
//
//   rho  = sigma^{-d/2} |psi|^2 = |psi~|^2      (ordinary)
//   rho~ = |psi|^2                              (invariant)
//   j    = (hbar/m) Im(psi~* grad psi~),  d_t rho + div j = 0

#include <limits>
#include <vector>

#include "nhlab/quantum/grid.hpp"

namespace nhlab::quantum {

struct DensityReport {
  RVector rho_ordinary;
  RVector rho_invariant;
  std::vector<RVector> flux;  // one array per axis
  double continuity_residual = std::numeric_limits<double>::quiet_NaN();
};

/// Densities and flux of a single state; continuity_residual stays NaN.
DensityReport density_report(Representation rep, const SpacetimeKind& kind, const GridState& state);

/// Report for the middle of 3 or 5 equally spaced samples, with the max-norm of
/// d_t rho + div j (time derivative by central differences, divergence spectral).
DensityReport density_report(Representation rep, const SpacetimeKind& kind,
                             const std::vector<GridState>& samples);

enum class Pairing {
  OrdinaryNorm,   // <psi, phi> = int psi* phi sigma^{-d/2}
  InvariantNorm,  // {psi, phi} = int psi* phi
};

/// Pairing of two states in representation `rep`; psi~ states are first mapped to psi.
Complex inner_product(Pairing which, Representation rep, const SpacetimeKind& kind, const GridState& a,
                      const GridState& b);

}  // namespace nhlab::quantum
