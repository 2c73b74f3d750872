#include "nhlab/algebra/generators.hpp"

#include "nhlab/errors.hpp"

namespace nhlab::algebra {

namespace {

const Complex kI{0.0, 1.0};

std::string name_of(GeneratorName n) {
  switch (n) {
    case GeneratorName::H: return "H";
    case GeneratorName::P: return "P";
    case GeneratorName::K: return "K";
    case GeneratorName::J: return "J";
    case GeneratorName::GalileiTime: return "dt";
    case GeneratorName::Dilatation: return "dD";
    case GeneratorName::Conformal: return "dG";
    case GeneratorName::Lowering: return "A";
    case GeneratorName::Raising: return "A+";
    case GeneratorName::Central: return "M";
  }
  return "?";
}

void check_index(int i, int dim) {
  if (i < 0 || i >= dim) throw InvalidArgument("generator index out of range");
}

Expr square_norm(int dim) {
  Expr r2(0.0);
  for (int k = 0; k < dim; ++k) r2 = r2 + space_var(k) * space_var(k);
  return r2;
}

// Sets c_x = f * x (the Euler field scaled by f).
void euler(FirstOrderOperator& op, const Expr& f) {
  for (int k = 0; k < op.dim; ++k) op.c_x[static_cast<std::size_t>(k)] = f * space_var(k);
}

FirstOrderOperator beltrami(const GeneratorId& id, const SpacetimeKind& kind, int dim,
                            const RealizeOptions& o) {
  FirstOrderOperator op(Chart::Beltrami, dim);
  const Expr t = time_var();
  const double sn2 = kind.signed_nu2();
  const double mu = o.mass / o.hbar;
  switch (id.name) {
    case GeneratorName::H:
      op.c_t = 1.0 - sn2 * t * t;
      euler(op, -sn2 * t);
      if (o.extended)
        op.c_0 = Expr(-0.5 * dim * sn2) * t + Expr(kI * (0.5 * mu * sn2)) * square_norm(dim);
      break;
    case GeneratorName::P:
      check_index(id.i, dim);
      op.c_x[static_cast<std::size_t>(id.i)] = -1.0;
      break;
    case GeneratorName::K:
      check_index(id.i, dim);
      op.c_x[static_cast<std::size_t>(id.i)] = -t;
      if (o.extended) op.c_0 = Expr(kI * mu) * space_var(id.i);
      break;
    case GeneratorName::GalileiTime:
      op.c_t = 1.0;
      break;
    case GeneratorName::Dilatation:
      op.c_t = 2.0 * t;
      euler(op, 1.0);
      break;
    case GeneratorName::Conformal:
      op.c_t = 1.0 + sn2 * t * t;
      euler(op, sn2 * t);
      break;
    default:
      throw Unsupported("generator " + name_of(id.name) + " has no Beltrami realization");
  }
  return op;
}

FirstOrderOperator static_chart(const GeneratorId& id, const SpacetimeKind& kind, int dim,
                                const RealizeOptions& o) {
  FirstOrderOperator op(Chart::Static, dim);
  const Expr tau = time_var();
  const double nu = kind.nu();
  const double s = kind.sign();
  const double mu = o.mass / o.hbar;
  const bool galilei = kind.is_galilei();
  // Trigonometric (ANH) or hyperbolic (NH) functions of nu*tau and 2*nu*tau.
  auto c = [&](double k) { return kind.is_nh() ? cosh(k * nu * tau) : cos(k * nu * tau); };
  auto sn = [&](double k) { return kind.is_nh() ? sinh(k * nu * tau) : sin(k * nu * tau); };
  switch (id.name) {
    case GeneratorName::H:
      op.c_t = 1.0;
      break;
    case GeneratorName::P:
      check_index(id.i, dim);
      if (galilei) {
        op.c_x[static_cast<std::size_t>(id.i)] = -1.0;
      } else {
        op.c_x[static_cast<std::size_t>(id.i)] = -c(1);
        if (o.extended) op.c_0 = Expr(kI * (s * mu * nu)) * space_var(id.i) * sn(1);
      }
      break;
    case GeneratorName::K:
      check_index(id.i, dim);
      if (galilei) {
        op.c_x[static_cast<std::size_t>(id.i)] = -tau;
        if (o.extended) op.c_0 = Expr(kI * mu) * space_var(id.i);
      } else {
        op.c_x[static_cast<std::size_t>(id.i)] = Expr(-1.0 / nu) * sn(1);
        if (o.extended) op.c_0 = Expr(kI * mu) * space_var(id.i) * c(1);
      }
      break;
    case GeneratorName::GalileiTime:
      if (galilei) {
        op.c_t = 1.0;
      } else {
        op.c_t = c(1) * c(1);
        euler(op, Expr(s * nu) * sn(1) * c(1));
      }
      break;
    case GeneratorName::Dilatation:
      op.c_t = Expr(1.0 / nu) * sn(2);
      euler(op, c(2));
      break;
    case GeneratorName::Conformal:
      op.c_t = c(2);
      euler(op, Expr(s * nu) * sn(2));
      break;
    default:
      throw Unsupported("generator " + name_of(id.name) + " has no static realization");
  }
  return op;
}

}  // namespace

std::string to_string(const GeneratorId& id) {
  std::string s = name_of(id.name);
  switch (id.name) {
    case GeneratorName::P:
    case GeneratorName::K:
    case GeneratorName::Lowering:
    case GeneratorName::Raising:
      s += "_" + std::to_string(id.i + 1);
      break;
    case GeneratorName::J:
      s += "_" + std::to_string(id.i + 1) + std::to_string(id.j + 1);
      break;
    default:
      break;
  }
  return s;
}

FirstOrderOperator realize(const GeneratorId& id, Chart chart, const SpacetimeKind& kind,
                           int dim, const RealizeOptions& options) {
  if (dim < 1) throw InvalidArgument("realize: dimension must be >= 1");
  if (!(options.hbar > 0.0) || !(options.mass > 0.0))
    throw InvalidArgument("realize: hbar and mass must be positive");
  if (chart == Chart::Linear) throw Unsupported("realize: linear chart not supported");
  const bool hermitian = options.convention == Convention::Hermitian;

  switch (id.name) {
    case GeneratorName::Central:
      return FirstOrderOperator::multiplication(
          chart, dim, Expr(hermitian ? options.mass : options.mass / options.hbar));
    case GeneratorName::J: {
      check_index(id.i, dim);
      check_index(id.j, dim);
      // x^i d_j - x^j d_i, identical in both charts; already anti-Hermitian.
      FirstOrderOperator op(chart, dim);
      if (id.i != id.j) {
        op.c_x[static_cast<std::size_t>(id.j)] = space_var(id.i);
        op.c_x[static_cast<std::size_t>(id.i)] = -space_var(id.j);
      }
      return hermitian ? Expr(kI * options.hbar) * op : op;
    }
    case GeneratorName::Lowering:
    case GeneratorName::Raising: {
      if (kind.is_galilei()) throw Unsupported("ladder operators need nu > 0");
      if (chart != Chart::Static)
        throw Unsupported("ladder operators are realized on the static chart only");
      const auto p = realize({GeneratorName::P, id.i, 0}, chart, kind, dim, options);
      const auto k = realize({GeneratorName::K, id.i, 0}, chart, kind, dim, options);
      const double nu = kind.nu();
      // ANH: A = P + i nu K.  NH continues nu -> i nu: A = P - nu K.
      const Complex w = kind.is_anh() ? Complex(0.0, nu) : Complex(-nu, 0.0);
      return id.name == GeneratorName::Lowering ? p + Expr(w) * k : p - Expr(w) * k;
    }
    case GeneratorName::Dilatation:
    case GeneratorName::Conformal:
      if (kind.is_galilei())
        throw Unsupported("dilatation/conformal generators are not defined for Galilei kind");
      break;
    default:
      break;
  }

  FirstOrderOperator op = chart == Chart::Beltrami ? beltrami(id, kind, dim, options)
                                                   : static_chart(id, kind, dim, options);
  return hermitian ? Expr(kI * options.hbar) * op : op;
}

}  // namespace nhlab::algebra
