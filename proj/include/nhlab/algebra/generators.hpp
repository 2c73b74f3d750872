#pragma once

#include <string>

#include "nhlab/algebra/operator.hpp"

namespace nhlab::algebra {

enum class GeneratorName {
  H,            // NH time translation (d/dtau)
  P,            // space translation, index i
  K,            // boost, index i
  J,            // rotation, indices i, j
  GalileiTime,  // d/dt of the Beltrami chart
  Dilatation,
  Conformal,    // 2 d/dt - d/dtau
  Lowering,     // A_i   (static chart)
  Raising,      // A_i^+ (static chart)
  Central,      // the central element m
};

/// Anti-Hermitian operators X, or Hermitian ones i*hbar*X.
enum class Convention { AntiHermitian, Hermitian };

struct GeneratorId {
  GeneratorName name = GeneratorName::H;
  int i = 0;
  int j = 0;
};

struct RealizeOptions {
  bool extended = false;  // add the central-extension multiplication terms
  Convention convention = Convention::AntiHermitian;
  double hbar = 1.0;
  double mass = 1.0;
};

std::string to_string(const GeneratorId& id);

/// Differential-operator realization of a generator on one chart.
/// In the anti-Hermitian extended convention the central element is the
/// multiplication by m/hbar; in the Hermitian convention it is m.
/// Throws Unsupported for ladder, dilatation and conformal generators of the
/// Galilei kind and for ladder operators outside the static chart.
FirstOrderOperator realize(const GeneratorId& id, Chart chart, const SpacetimeKind& kind,
                           int dim, const RealizeOptions& options = {});

}  // namespace nhlab::algebra
