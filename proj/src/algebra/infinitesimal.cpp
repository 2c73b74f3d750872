#include "nhlab/algebra/infinitesimal.hpp"

#include <cmath>

namespace nhlab::algebra {

namespace {

void require_nh_or_anh(const SpacetimeKind& kind) {
  if (kind.is_galilei()) throw Unsupported("infinitesimal action: needs an NH or ANH kind");
}

// (cosh 2 nu tau, sinh 2 nu tau) for NH, (cos, sin) for ANH
std::pair<double, double> hyper(const SpacetimeKind& kind, double tau) {
  const double a = 2.0 * kind.nu() * tau;
  return kind.is_nh() ? std::pair{std::cosh(a), std::sinh(a)} : std::pair{std::cos(a), std::sin(a)};
}

}  // namespace

GeneratorFlow generator_flow(InfinitesimalGenerator name, const SpacetimeKind& kind, double tau) {
  require_nh_or_anh(kind);
  const auto [c, s] = hyper(kind, tau);
  const double nu = kind.nu();
  switch (name) {
    case InfinitesimalGenerator::H_tau: return {1.0, 0.0};
    case InfinitesimalGenerator::D: return {s / nu, c};
    case InfinitesimalGenerator::G: return {c, kind.sign() * nu * s};
  }
  throw InvalidArgument("generator_flow: unknown generator");
}

quantum::Complex variation_factor(InfinitesimalGenerator name, const SpacetimeKind& kind, double tau,
                                  double q2, int d, double hbar, double mass) {
  require_nh_or_anh(kind);
  const auto [c, s] = hyper(kind, tau);
  const double nu = kind.nu(), sg = kind.sign(), mu = mass / hbar, half_d = 0.5 * d;
  switch (name) {
    case InfinitesimalGenerator::H_tau: return 0.0;
    case InfinitesimalGenerator::D: return {-half_d * c, sg * mu * nu * q2 * s};
    case InfinitesimalGenerator::G: return {-sg * half_d * nu * s, sg * mu * nu * nu * q2 * c};
  }
  throw InvalidArgument("variation_factor: unknown generator");
}

quantum::GridState infinitesimal_action(InfinitesimalGenerator name, const SpacetimeKind& kind,
                                        const quantum::GridState& psi, double eps) {
  quantum::validate(psi);
  if (psi.chart != Chart::Static) throw ChartMismatch("infinitesimal_action: static chart required");
  require_nh_or_anh(kind);
  quantum::GridState out = psi;
  for (std::size_t k = 0; k < psi.grid.size(); ++k) {
    const double q2 = psi.grid.point(k).squaredNorm();
    out.values[static_cast<Eigen::Index>(k)] *=
        1.0 + eps * variation_factor(name, kind, psi.time, q2, psi.dim(), psi.hbar, psi.mass);
  }
  return out;
}

}  // namespace nhlab::algebra
