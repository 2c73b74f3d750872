#include "nhlab/quantum/residual.hpp"

#include "nhlab/quadrature.hpp"
#include "nhlab/quantum/spectral.hpp"

namespace nhlab::quantum {

CVector apply_hamiltonian(WaveEquation eq, const SpacetimeKind& kind, const GridState& s) {
  validate(s);
  const Chart want = eq == WaveEquation::Harmonic ? Chart::Static : Chart::Beltrami;
  if (s.chart != want) throw ChartMismatch("apply_hamiltonian: chart does not match the equation");
  const double hbar = s.hbar, m = s.mass, sn2 = kind.signed_nu2(), t = s.time, d = s.dim();
  const Complex i(0.0, 1.0);
  CVector h = -(hbar * hbar / (2.0 * m)) * laplacian(s.grid, s.values);
  if (eq == WaveEquation::Extraordinary) return h;

  CVector x2(static_cast<Eigen::Index>(s.grid.size()));
  for (std::size_t k = 0; k < s.grid.size(); ++k)
    x2[static_cast<Eigen::Index>(k)] = s.grid.point(k).squaredNorm();
  if (eq == WaveEquation::Harmonic) return h - (0.5 * sn2 * m) * x2.cwiseProduct(s.values);

  require_beltrami_domain(kind, t, "apply_hamiltonian");
  const double sg = sigma(kind, t);
  if (eq == WaveEquation::Intermediate) return h - (i * hbar * sn2 * t * d / (2.0 * sg)) * s.values;
  h += (i * hbar * sn2 * t / sg) * radial_derivative(s.grid, s.values);
  h -= (sn2 * m / (2.0 * sg * sg)) * x2.cwiseProduct(s.values);
  if (eq == WaveEquation::Symmetrized) h += (i * hbar * sn2 * t * d / (2.0 * sg)) * s.values;
  return h;
}

double equation_residual(WaveEquation eq, const SpacetimeKind& kind, const std::vector<GridState>& samples) {
  const std::size_t n = samples.size();
  if (n != 3 && n != 5) throw InvalidArgument("equation_residual: needs 3 or 5 samples");
  std::vector<double> times;
  for (const auto& s : samples) {
    require_same_grid(samples.front(), s, "equation_residual");
    times.push_back(s.time);
  }
  const GridState& mid = samples[n / 2];
  const auto w = fd_weights(mid.time, times, 1);
  CVector dt = CVector::Zero(mid.values.size());
  for (std::size_t j = 0; j < n; ++j) dt += w[j] * samples[j].values;
  const CVector r = Complex(0.0, mid.hbar) * dt - apply_hamiltonian(eq, kind, mid);
  return r.cwiseAbs().maxCoeff() / mid.values.cwiseAbs().maxCoeff();
}

}  // namespace nhlab::quantum
