#pragma once

#include <complex>
#include <memory>
#include <span>
#include <string>

namespace nhlab::algebra {

using Complex = std::complex<double>;

/// Immutable complex-valued expression in the chart coordinates.
///
/// Variable 0 is the time coordinate (t or tau), variables 1..d the spatial
/// ones.  Expressions differentiate exactly, so operator coefficients carry
/// their partials to any order without numerical differencing.
class Expr {
 public:
  Expr();
  Expr(Complex c);  // NOLINT: implicit constants keep formulas readable
  Expr(double c);   // NOLINT

  static Expr var(int index);

  Complex operator()(std::span<const double> coords) const;
  Expr diff(int index) const;

  bool is_constant() const;
  bool is_zero() const;
  /// Value of a constant expression; throws for non-constants.
  Complex constant_value() const;

  std::string str() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);
  friend Expr sinh(const Expr& a);
  friend Expr cosh(const Expr& a);
  friend Expr exp(const Expr& a);

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

/// Shorthand for the time coordinate and spatial coordinate i (0-based).
inline Expr time_var() { return Expr::var(0); }
inline Expr space_var(int i) { return Expr::var(i + 1); }

}  // namespace nhlab::algebra
