#pragma once

// Time evolution for the three wave equations.
//
//   OrdinaryNH     i hbar psi_t = [-hbar^2 lap/2m + s i hbar nu^2 t x.grad/sigma
//                                  - s m nu^2 x^2/(2 sigma^2)] psi
//   Extraordinary  i hbar psi~_t = -hbar^2 lap psi~/2m
//   Harmonic       i hbar psi_tau = [-hbar^2 lap/2m - s m nu^2 q^2/2] psi
//
// OrdinaryNH is propagated exactly by conjugating the free flow with the gauge
// map; crank_nicolson discretises it directly and is kept for cross-checks.

#include "nhlab/quantum/grid.hpp"

namespace nhlab::quantum {

enum class Equation { OrdinaryNH, Extraordinary, Harmonic };

struct EvolveOptions {
  double boundary_eps = kDefaultBoundaryEps;
  bool check_boundary = true;  // off for extended states such as plane waves
};

/// Advances `state` to `target` in `steps` equal steps. The boundary guard is
/// asserted before and after the batch. DomainExit carries the last in-domain time.
GridState evolve(Equation eq, const SpacetimeKind& kind, const GridState& state, double target,
                 int steps, const EvolveOptions& opts = {});

struct CrankNicolsonOptions {
  int fd_order = 8;  // even order of the periodic finite-difference stencils
  double boundary_eps = kDefaultBoundaryEps;
  bool check_boundary = true;
};

/// Direct Crank-Nicolson for OrdinaryNH with the Hamiltonian frozen at each
/// step midpoint; d = 1 only.
GridState crank_nicolson(const SpacetimeKind& kind, const GridState& state, double target, int steps,
                         const CrankNicolsonOptions& opts = {});

}  // namespace nhlab::quantum
