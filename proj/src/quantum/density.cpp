#include "nhlab/quantum/density.hpp"

#include <cmath>

#include "nhlab/quadrature.hpp"
#include "nhlab/quantum/maps.hpp"
#include "nhlab/quantum/spectral.hpp"

namespace nhlab::quantum {

namespace {

double sigma_at(const SpacetimeKind& kind, const GridState& s) {
  if (s.chart != Chart::Beltrami) throw ChartMismatch("density: Beltrami chart required");
  require_beltrami_domain(kind, s.time, "density");
  return sigma(kind, s.time);
}

GridState to_tilde(Representation rep, const SpacetimeKind& kind, const GridState& s) {
  return rep == Representation::PsiTilde ? s : gauge_map(GaugeDirection::PsiToTilde, kind, s);
}

}  // namespace

DensityReport density_report(Representation rep, const SpacetimeKind& kind, const GridState& state) {
  validate(state);
  const double sg = sigma_at(kind, state);
  const double scale = std::pow(sg, state.dim() / 2.0);
  const GridState tilde = to_tilde(rep, kind, state);

  DensityReport r;
  r.rho_ordinary = tilde.values.cwiseAbs2();
  r.rho_invariant = rep == Representation::PsiOrdinary ? RVector(state.values.cwiseAbs2())
                                                       : RVector(scale * r.rho_ordinary);
  if (rep == Representation::PsiOrdinary) r.rho_ordinary = std::pow(sg, -state.dim() / 2.0) * r.rho_invariant;
  for (int axis = 0; axis < state.dim(); ++axis) {
    const CVector g = gradient(state.grid, tilde.values, axis);
    r.flux.push_back((state.hbar / state.mass) * (tilde.values.conjugate().cwiseProduct(g)).imag());
  }
  return r;
}

DensityReport density_report(Representation rep, const SpacetimeKind& kind,
                             const std::vector<GridState>& samples) {
  const std::size_t n = samples.size();
  if (n != 3 && n != 5) throw InvalidArgument("density_report: needs 3 or 5 samples");
  std::vector<double> times;
  for (const auto& s : samples) {
    require_same_grid(samples.front(), s, "density_report");
    times.push_back(s.time);
  }
  const GridState& mid = samples[n / 2];
  DensityReport r = density_report(rep, kind, mid);
  const auto w = fd_weights(mid.time, times, 1);
  RVector rho_t = RVector::Zero(r.rho_ordinary.size());
  for (std::size_t j = 0; j < n; ++j) rho_t += w[j] * density_report(rep, kind, samples[j]).rho_ordinary;
  RVector balance = rho_t;
  for (int axis = 0; axis < mid.dim(); ++axis)
    balance += gradient(mid.grid, r.flux[static_cast<std::size_t>(axis)].cast<Complex>(), axis).real();
  r.continuity_residual = balance.cwiseAbs().maxCoeff();
  return r;
}

Complex inner_product(Pairing which, Representation rep, const SpacetimeKind& kind, const GridState& a,
                      const GridState& b) {
  validate(a);
  validate(b);
  require_same_grid(a, b, "inner_product");
  if (a.time != b.time || a.chart != b.chart) throw GridMismatch("inner_product: states at different times");
  const double sg = sigma_at(kind, a);
  const double d = a.dim();
  // psi = sigma^{d/4} (phase) psi~, the phase cancels in psi* phi
  double weight = which == Pairing::OrdinaryNorm ? std::pow(sg, -d / 2.0) : 1.0;
  if (rep == Representation::PsiTilde) weight *= std::pow(sg, d / 2.0);
  return weight * a.grid.cell_volume() * a.values.dot(b.values);
}

}  // namespace nhlab::quantum
