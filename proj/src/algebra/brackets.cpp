#include "nhlab/algebra/brackets.hpp"

#include <algorithm>
#include <random>

#include "nhlab/errors.hpp"

namespace nhlab::algebra {

namespace {

const Complex kI{0.0, 1.0};

using G = GeneratorName;

class TableBuilder {
 public:
  TableBuilder(const SpacetimeKind& kind, const BracketOptions& o, BracketReport& report)
      : kind_(kind), o_(o), report_(report) {}

  void use_chart(Chart chart, bool extended, Convention conv) {
    chart_ = chart;
    ro_ = RealizeOptions{extended, conv, o_.hbar, o_.mass};
    points_ = sample_points(chart, kind_, o_);
    suffix_ = " (" + to_string(chart) + (conv == Convention::Hermitian ? ", hermitian" : "") +
              (extended ? ", extended" : "") + ")";
  }

  FirstOrderOperator gen(G name, int i = 0, int j = 0) const {
    return realize({name, i, j}, chart_, kind_, o_.dim, ro_);
  }
  FirstOrderOperator zero() const { return FirstOrderOperator(chart_, o_.dim); }

  void check(const std::string& label, const std::string& expected_label,
             const FirstOrderOperator& actual, const FirstOrderOperator& expected) {
    BracketCheck c;
    c.bracket = label + suffix_;
    c.expected = expected_label;
    c.max_abs_deviation = max_abs_difference(actual, expected, points_);
    c.pass = c.max_abs_deviation <= o_.tol;
    report_.entries.push_back(std::move(c));
  }

  void bracket(G a, int ai, int aj, G b, int bi, int bj, const std::string& expected_label,
               const FirstOrderOperator& expected) {
    const GeneratorId x{a, ai, aj}, y{b, bi, bj};
    check("[" + to_string(x) + "," + to_string(y) + "]", expected_label,
          commutator(gen(a, ai, aj), gen(b, bi, bj)), expected);
  }

 private:
  const SpacetimeKind& kind_;
  const BracketOptions& o_;
  BracketReport& report_;
  Chart chart_ = Chart::Beltrami;
  RealizeOptions ro_;
  std::vector<std::vector<double>> points_;
  std::string suffix_;
};

std::string sign_prefix(int s) { return s > 0 ? "+" : s < 0 ? "-" : "0*"; }

std::string idx(int i) { return std::to_string(i + 1); }

// Brackets of the homogeneous part: rotations with everything, H with P and K.
// `factor` multiplies the right-hand sides (i*hbar for the Hermitian convention).
void kinematic_brackets(TableBuilder& b, const SpacetimeKind& kind, int d, Complex factor,
                        const std::string& factor_label) {
  const Expr f(factor);
  const double sn2 = kind.signed_nu2();
  auto delta = [](int a, int c) { return a == c ? 1.0 : 0.0; };

  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      for (int k = 0; k < d; ++k)
        for (int l = k + 1; l < d; ++l) {
          FirstOrderOperator rhs = Expr(delta(j, k)) * b.gen(G::J, i, l) +
                                   Expr(delta(i, l)) * b.gen(G::J, j, k) -
                                   Expr(delta(i, k)) * b.gen(G::J, j, l) -
                                   Expr(delta(j, l)) * b.gen(G::J, i, k);
          b.bracket(G::J, i, j, G::J, k, l,
                    factor_label + "(d_jk J_il + d_il J_jk - d_ik J_jl - d_jl J_ik)", f * rhs);
        }
      for (int k = 0; k < d; ++k) {
        for (G gk : {G::P, G::K}) {
          FirstOrderOperator rhs =
              Expr(delta(j, k)) * b.gen(gk, i) - Expr(delta(i, k)) * b.gen(gk, j);
          const std::string n = gk == G::P ? "P" : "K";
          b.bracket(G::J, i, j, gk, k, 0,
                    factor_label + "(d_jk " + n + "_i - d_ik " + n + "_j)", f * rhs);
        }
      }
      b.bracket(G::J, i, j, G::H, 0, 0, "0", b.zero());
    }

  for (int j = 0; j < d; ++j) {
    b.bracket(G::H, 0, 0, G::P, j, 0,
              factor_label + sign_prefix(kind.sign()) + "nu^2 K_" + idx(j),
              f * (Expr(sn2) * b.gen(G::K, j)));
    b.bracket(G::H, 0, 0, G::K, j, 0, factor_label + "P_" + idx(j), f * b.gen(G::P, j));
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (j > i) {
        b.bracket(G::P, i, 0, G::P, j, 0, "0", b.zero());
        b.bracket(G::K, i, 0, G::K, j, 0, "0", b.zero());
      }
    }
}

void nh_algebra(TableBuilder& b, const SpacetimeKind& kind, const BracketOptions& o) {
  const int d = o.dim;
  for (Chart chart : {Chart::Beltrami, Chart::Static}) {
    b.use_chart(chart, false, Convention::AntiHermitian);
    kinematic_brackets(b, kind, d, 1.0, "");
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) b.bracket(G::P, i, 0, G::K, j, 0, "0", b.zero());
  }
  // The static chart again in the Hermitian convention with explicit hbar.
  b.use_chart(Chart::Static, false, Convention::Hermitian);
  const Complex ih = kI * o.hbar;
  for (int j = 0; j < d; ++j) {
    b.bracket(G::H, 0, 0, G::P, j, 0,
              sign_prefix(kind.sign()) + "i hbar nu^2 K_" + idx(j),
              Expr(ih * kind.signed_nu2()) * b.gen(G::K, j));
    b.bracket(G::H, 0, 0, G::K, j, 0, "i hbar P_" + idx(j), Expr(ih) * b.gen(G::P, j));
  }
}

void extended_nh(TableBuilder& b, const SpacetimeKind& kind, const BracketOptions& o) {
  const int d = o.dim;
  for (Chart chart : {Chart::Beltrami, Chart::Static}) {
    b.use_chart(chart, true, Convention::AntiHermitian);
    kinematic_brackets(b, kind, d, 1.0, "");
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        b.bracket(G::P, i, 0, G::K, j, 0, i == j ? "-i M" : "0",
                  Expr(i == j ? -kI : Complex{}) * b.gen(G::Central));
    for (int i = 0; i < d; ++i) {
      b.bracket(G::P, i, 0, G::Central, 0, 0, "0", b.zero());
      b.bracket(G::K, i, 0, G::Central, 0, 0, "0", b.zero());
    }
    b.bracket(G::H, 0, 0, G::Central, 0, 0, "0", b.zero());
  }
  b.use_chart(Chart::Static, true, Convention::Hermitian);
  const Complex ih = kI * o.hbar;
  kinematic_brackets(b, kind, d, ih, "i hbar ");
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      b.bracket(G::P, i, 0, G::K, j, 0, i == j ? "i hbar M" : "0",
                Expr(i == j ? ih : Complex{}) * b.gen(G::Central));
}

void ladder(TableBuilder& b, const SpacetimeKind& kind, const BracketOptions& o) {
  const int d = o.dim;
  const double nu = kind.nu();
  const double h = o.hbar;
  // ANH: [H,A] = -hbar nu A, [A,A+] = 2 hbar nu M.  NH: the same with an extra i.
  const Complex unit = kind.is_anh() ? Complex(1.0, 0.0) : kI;
  const std::string u = kind.is_anh() ? "" : "i ";
  b.use_chart(Chart::Static, true, Convention::Hermitian);
  for (int i = 0; i < d; ++i) {
    b.bracket(G::H, 0, 0, G::Lowering, i, 0, "-" + u + "hbar nu A_" + idx(i),
              Expr(-unit * h * nu) * b.gen(G::Lowering, i));
    b.bracket(G::H, 0, 0, G::Raising, i, 0, "+" + u + "hbar nu A+_" + idx(i),
              Expr(unit * h * nu) * b.gen(G::Raising, i));
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      b.bracket(G::Lowering, i, 0, G::Raising, j, 0,
                i == j ? "2 " + u + "hbar nu M" : "0",
                Expr(i == j ? 2.0 * unit * h * nu : Complex{}) * b.gen(G::Central));
      if (j > i) {
        b.bracket(G::Lowering, i, 0, G::Lowering, j, 0, "0", b.zero());
        b.bracket(G::Raising, i, 0, G::Raising, j, 0, "0", b.zero());
      }
    }
}

void so12(TableBuilder& b, const SpacetimeKind& kind) {
  for (Chart chart : {Chart::Beltrami, Chart::Static}) {
    b.use_chart(chart, false, Convention::AntiHermitian);
    const auto h = b.gen(G::H);
    const auto dd = b.gen(G::Dilatation);
    const auto dg = b.gen(G::Conformal);
    b.check("[dtau,dD]", "2 dG", commutator(h, dd), Expr(2.0) * dg);
    b.check("[dtau,dG]", sign_prefix(kind.sign()) + "2 nu^2 dD", commutator(h, dg),
            Expr(2.0 * kind.signed_nu2()) * dd);
    b.check("[dG,dD]", "2 dtau", commutator(dg, dd), Expr(2.0) * h);
    b.check("dG", "2 dt - dtau", dg, Expr(2.0) * b.gen(G::GalileiTime) - h);
  }
}

}  // namespace

std::string to_string(BracketTable t) {
  switch (t) {
    case BracketTable::NHAlgebra: return "nh_algebra";
    case BracketTable::ExtendedNH: return "extended_nh";
    case BracketTable::Ladder: return "ladder";
    case BracketTable::SO12: return "so12";
  }
  return "?";
}

bool BracketReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
}

double BracketReport::worst() const {
  double w = 0.0;
  for (const auto& e : entries) w = std::max(w, e.max_abs_deviation);
  return w;
}

std::vector<std::vector<double>> sample_points(Chart chart, const SpacetimeKind& kind,
                                               const BracketOptions& o) {
  if (o.samples < 1 || o.dim < 1) throw InvalidArgument("sample_points: bad sizes");
  if (!(o.time_box > 0.0) || !(o.space_box > 0.0))
    throw InvalidArgument("sample_points: boxes must be positive");
  const double scale = kind.is_galilei() ? 1.0 : 1.0 / kind.nu();
  double tmax = o.time_box * scale;
  // Keep NH Beltrami time and ANH static time inside their charts.
  if (kind.is_nh() && chart == Chart::Beltrami) tmax = std::min(tmax, (1.0 - 1e-3) * scale);
  if (kind.is_anh() && chart == Chart::Static) tmax = std::min(tmax, 1.5 * scale);

  std::mt19937_64 rng(o.seed ^ (static_cast<std::uint64_t>(chart) << 32));
  std::uniform_real_distribution<double> ut(-tmax, tmax);
  std::uniform_real_distribution<double> ux(-o.space_box, o.space_box);
  std::vector<std::vector<double>> pts(static_cast<std::size_t>(o.samples));
  for (auto& p : pts) {
    p.resize(static_cast<std::size_t>(o.dim) + 1);
    p[0] = ut(rng);
    for (int k = 1; k <= o.dim; ++k) p[static_cast<std::size_t>(k)] = ux(rng);
  }
  return pts;
}

BracketReport verify_bracket_table(const SpacetimeKind& kind, BracketTable table,
                                   const BracketOptions& options) {
  if ((table == BracketTable::Ladder || table == BracketTable::SO12) && kind.is_galilei())
    throw Unsupported("table " + to_string(table) + " needs nu > 0");
  BracketReport report;
  report.table = table;
  TableBuilder b(kind, options, report);
  switch (table) {
    case BracketTable::NHAlgebra: nh_algebra(b, kind, options); break;
    case BracketTable::ExtendedNH: extended_nh(b, kind, options); break;
    case BracketTable::Ladder: ladder(b, kind, options); break;
    case BracketTable::SO12: so12(b, kind); break;
  }
  return report;
}

double jacobi_deviation(const FirstOrderOperator& x, const FirstOrderOperator& y,
                        const FirstOrderOperator& z,
                        const std::vector<std::vector<double>>& points) {
  const auto sum = commutator(x, commutator(y, z)) + commutator(y, commutator(z, x)) +
                   commutator(z, commutator(x, y));
  return max_abs_coefficient(sum, points);
}

}  // namespace nhlab::algebra
