#pragma once

// Pointwise residuals of the wave equations on sampled solutions: time
// derivative by central differences over equally spaced samples, space
// derivatives spectral.

#include <vector>

#include "nhlab/quantum/grid.hpp"

namespace nhlab::quantum {

enum class WaveEquation {
  OrdinaryNH,     // H = -hbar^2 lap/2m + s i hbar nu^2 t x.grad/sigma - s m nu^2 x^2/(2 sigma^2)
  Extraordinary,  // H = -hbar^2 lap/2m
  Harmonic,       // H = -hbar^2 lap/2m - s m nu^2 q^2/2
  Symmetrized,    // OrdinaryNH + s i hbar nu^2 t d/(2 sigma)
  Intermediate,   // -hbar^2 lap/2m - s i hbar nu^2 t d/(2 sigma)
};

/// max |i hbar d_t psi - H psi| / max |psi| at the middle of 3 or 5 samples.
double equation_residual(WaveEquation eq, const SpacetimeKind& kind, const std::vector<GridState>& samples);

/// H psi for the state at its own time label.
CVector apply_hamiltonian(WaveEquation eq, const SpacetimeKind& kind, const GridState& s);

}  // namespace nhlab::quantum
