#pragma once

#include <span>
#include <vector>

#include "nhlab/algebra/expr.hpp"
#include "nhlab/geometry.hpp"

namespace nhlab::algebra {

/// X = c_t d_0 + c_i d_i + c_0 acting on functions of (time, space) in one chart.
struct FirstOrderOperator {
  Chart chart = Chart::Beltrami;
  int dim = 0;
  Expr c_t;
  std::vector<Expr> c_x;
  Expr c_0;

  FirstOrderOperator() = default;
  FirstOrderOperator(Chart chart, int dim);

  static FirstOrderOperator multiplication(Chart chart, int dim, Expr f);

  /// X f as an exact expression.
  Expr apply(const Expr& f) const;

  FirstOrderOperator& operator+=(const FirstOrderOperator& o);
  FirstOrderOperator& operator-=(const FirstOrderOperator& o);
};

FirstOrderOperator operator+(FirstOrderOperator a, const FirstOrderOperator& b);
FirstOrderOperator operator-(FirstOrderOperator a, const FirstOrderOperator& b);
FirstOrderOperator operator-(const FirstOrderOperator& a);
FirstOrderOperator operator*(const Expr& f, const FirstOrderOperator& a);

/// [X, Y] = XY - YX, again first order:
///   coefficients  X(Y^mu) - Y(X^mu),   multiplier  X(Y_0) - Y(X_0)
/// where X(.) acts with the derivative part only.
FirstOrderOperator commutator(const FirstOrderOperator& x, const FirstOrderOperator& y);

/// Largest absolute coefficient difference over the given points
/// (each point is {time, space_1, ..., space_d}).
double max_abs_difference(const FirstOrderOperator& a, const FirstOrderOperator& b,
                          std::span<const std::vector<double>> points);

/// Largest absolute coefficient of a at the points.
double max_abs_coefficient(const FirstOrderOperator& a,
                           std::span<const std::vector<double>> points);

}  // namespace nhlab::algebra
