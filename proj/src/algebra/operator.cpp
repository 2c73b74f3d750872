#include "nhlab/algebra/operator.hpp"

#include <algorithm>
#include <cmath>

#include "nhlab/errors.hpp"

namespace nhlab::algebra {

FirstOrderOperator::FirstOrderOperator(Chart chart_, int dim_)
    : chart(chart_), dim(dim_), c_t(0.0), c_x(static_cast<std::size_t>(dim_), Expr(0.0)),
      c_0(0.0) {
  if (dim_ < 0) throw InvalidArgument("FirstOrderOperator: negative dimension");
}

FirstOrderOperator FirstOrderOperator::multiplication(Chart chart, int dim, Expr f) {
  FirstOrderOperator op(chart, dim);
  op.c_0 = std::move(f);
  return op;
}

namespace {

// Derivative part only.
Expr vector_field(const FirstOrderOperator& x, const Expr& f) {
  Expr out = x.c_t * f.diff(0);
  for (int i = 0; i < x.dim; ++i)
    out = out + x.c_x[static_cast<std::size_t>(i)] * f.diff(i + 1);
  return out;
}

void require_same(const FirstOrderOperator& a, const FirstOrderOperator& b) {
  if (a.chart != b.chart)
    throw ChartMismatch("operators are realized on different charts");
  if (a.dim != b.dim) throw InvalidArgument("operators have different dimensions");
}

}  // namespace

Expr FirstOrderOperator::apply(const Expr& f) const {
  return vector_field(*this, f) + c_0 * f;
}

FirstOrderOperator& FirstOrderOperator::operator+=(const FirstOrderOperator& o) {
  require_same(*this, o);
  c_t = c_t + o.c_t;
  for (int i = 0; i < dim; ++i) {
    auto k = static_cast<std::size_t>(i);
    c_x[k] = c_x[k] + o.c_x[k];
  }
  c_0 = c_0 + o.c_0;
  return *this;
}

FirstOrderOperator& FirstOrderOperator::operator-=(const FirstOrderOperator& o) {
  return *this += -o;
}

FirstOrderOperator operator+(FirstOrderOperator a, const FirstOrderOperator& b) {
  return a += b;
}

FirstOrderOperator operator-(FirstOrderOperator a, const FirstOrderOperator& b) {
  return a -= b;
}

FirstOrderOperator operator-(const FirstOrderOperator& a) { return Expr(-1.0) * a; }

FirstOrderOperator operator*(const Expr& f, const FirstOrderOperator& a) {
  FirstOrderOperator out(a.chart, a.dim);
  out.c_t = f * a.c_t;
  for (int i = 0; i < a.dim; ++i) {
    auto k = static_cast<std::size_t>(i);
    out.c_x[k] = f * a.c_x[k];
  }
  out.c_0 = f * a.c_0;
  return out;
}

FirstOrderOperator commutator(const FirstOrderOperator& x, const FirstOrderOperator& y) {
  require_same(x, y);
  FirstOrderOperator out(x.chart, x.dim);
  out.c_t = vector_field(x, y.c_t) - vector_field(y, x.c_t);
  for (int i = 0; i < x.dim; ++i) {
    auto k = static_cast<std::size_t>(i);
    out.c_x[k] = vector_field(x, y.c_x[k]) - vector_field(y, x.c_x[k]);
  }
  out.c_0 = vector_field(x, y.c_0) - vector_field(y, x.c_0);
  return out;
}

double max_abs_difference(const FirstOrderOperator& a, const FirstOrderOperator& b,
                          std::span<const std::vector<double>> points) {
  return max_abs_coefficient(a - b, points);
}

double max_abs_coefficient(const FirstOrderOperator& a,
                           std::span<const std::vector<double>> points) {
  double worst = 0.0;
  for (const auto& p : points) {
    worst = std::max(worst, std::abs(a.c_t(p)));
    for (const auto& c : a.c_x) worst = std::max(worst, std::abs(c(p)));
    worst = std::max(worst, std::abs(a.c_0(p)));
  }
  return worst;
}

}  // namespace nhlab::algebra
