#pragma once

// First-order actions of d/dtau, D and G on oscillator wave functions psi(tau, q).
// The transformed solution is
//   psi'(tau, q) = psi(tau - eps xi^tau, q - eps xi^q) + delta psi,
// with (xi^tau, xi^q) the vector field of the generator and delta psi the
// multiplicative variation returned by infinitesimal_action.

#include "nhlab/quantum/grid.hpp"

namespace nhlab::algebra {

enum class InfinitesimalGenerator { H_tau, D, G };

struct GeneratorFlow {
  double xi_tau;
  double xi_q_scale;  // xi^q = xi_q_scale * q
};

/// Vector field of the generator at static time tau.
GeneratorFlow generator_flow(InfinitesimalGenerator name, const SpacetimeKind& kind, double tau);

/// delta psi / (eps psi) at (tau, q).
quantum::Complex variation_factor(InfinitesimalGenerator name, const SpacetimeKind& kind, double tau,
                                  double q2, int d, double hbar, double mass);

/// psi + delta psi on the grid of a static-chart state. Unsupported for Galilei kinds.
quantum::GridState infinitesimal_action(InfinitesimalGenerator name, const SpacetimeKind& kind,
                                        const quantum::GridState& psi, double eps);

}  // namespace nhlab::algebra
