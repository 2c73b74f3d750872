#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nhlab/algebra/generators.hpp"

namespace nhlab::algebra {

enum class BracketTable { NHAlgebra, ExtendedNH, Ladder, SO12 };

std::string to_string(BracketTable t);

struct BracketCheck {
  std::string bracket;   // e.g. "[H,P_1] (beltrami)"
  std::string expected;  // right-hand side, e.g. "+nu^2 K_1"
  double max_abs_deviation = 0.0;
  bool pass = false;
};

struct BracketReport {
  BracketTable table = BracketTable::NHAlgebra;
  std::vector<BracketCheck> entries;
  bool all_pass() const;
  double worst() const;
};

struct BracketOptions {
  int samples = 1000;
  std::uint64_t seed = 12345;
  int dim = 3;
  double tol = 1e-12;
  double hbar = 1.0;
  double mass = 1.0;
  /// Sampling box: |time| <= time_box/nu (scaled into the chart domain),
  /// |space_i| <= space_box.
  double time_box = 0.9;
  double space_box = 2.0;
};

/// Random sample points {time, x_1..x_d} inside the chart domain.
std::vector<std::vector<double>> sample_points(Chart chart, const SpacetimeKind& kind,
                                               const BracketOptions& options);

/// Evaluates every bracket of the table on the realized generators and
/// compares coefficient-wise with the stated right-hand side.
BracketReport verify_bracket_table(const SpacetimeKind& kind, BracketTable table,
                                   const BracketOptions& options = {});

/// Max coefficient of [X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]] at the points.
double jacobi_deviation(const FirstOrderOperator& x, const FirstOrderOperator& y,
                        const FirstOrderOperator& z,
                        const std::vector<std::vector<double>>& points);

}  // namespace nhlab::algebra
