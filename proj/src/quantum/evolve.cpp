#include "nhlab/quantum/evolve.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "nhlab/quadrature.hpp"
#include "nhlab/quantum/maps.hpp"
#include "nhlab/quantum/spectral.hpp"

namespace nhlab::quantum {

namespace {

RVector k_squared(const GridSpec& g) {
  const RVector k = wavenumbers(g);
  RVector k2(static_cast<Eigen::Index>(g.size()));
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    double s = 0.0;
    for (int m : g.multi_index(idx)) s += k[m] * k[m];
    k2[static_cast<Eigen::Index>(idx)] = s;
  }
  return k2;
}

CVector kinetic_phase(const GridState& s, double dt) {
  const RVector k2 = k_squared(s.grid);
  CVector ph(k2.size());
  for (Eigen::Index i = 0; i < k2.size(); ++i)
    ph[i] = std::polar(1.0, -s.hbar * k2[i] * dt / (2.0 * s.mass));
  return ph;
}

// DomainExit, stamped with the last in-domain step time, when the batch leaves the chart.
void require_window(const SpacetimeKind& kind, double t0, double target, int steps, const char* where) {
  const double h = (target - t0) / steps;
  double last = t0;
  for (int n = 1; n <= steps; ++n) {
    const double t = t0 + n * h;
    if (!in_beltrami_domain(kind, t))
      throw DomainExit(std::string(where) + ": evolution leaves the Beltrami chart before t = " +
                           std::to_string(target),
                       last);
    last = t;
  }
}

void guard(const GridState& s, bool on, double eps, const char* where) {
  if (on) require_contained(s, eps, where);
}

GridState free_flow(const GridState& state, double target, int steps) {
  GridState s = state;
  const double dt = (target - state.time) / steps;
  const CVector ph = kinetic_phase(state, dt);
  for (int n = 0; n < steps; ++n) {
    fft(s.grid, s.values, false);
    s.values.array() *= ph.array();
    fft(s.grid, s.values, true);
  }
  s.time = target;
  return s;
}

GridState harmonic_flow(const SpacetimeKind& kind, const GridState& state, double target, int steps) {
  GridState s = state;
  const double dt = (target - state.time) / steps;
  const CVector kin = kinetic_phase(state, dt);
  CVector half(static_cast<Eigen::Index>(s.grid.size()));
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    const double v = -0.5 * kind.signed_nu2() * s.mass * s.grid.point(k).squaredNorm();
    half[static_cast<Eigen::Index>(k)] = std::polar(1.0, -v * dt / (2.0 * s.hbar));
  }
  for (int n = 0; n < steps; ++n) {
    s.values.array() *= half.array();
    fft(s.grid, s.values, false);
    s.values.array() *= kin.array();
    fft(s.grid, s.values, true);
    s.values.array() *= half.array();
  }
  s.time = target;
  return s;
}

}  // namespace

GridState evolve(Equation eq, const SpacetimeKind& kind, const GridState& state, double target,
                 int steps, const EvolveOptions& opts) {
  validate(state);
  if (steps < 1) throw InvalidArgument("evolve: steps must be positive");
  const Chart want = eq == Equation::Harmonic ? Chart::Static : Chart::Beltrami;
  if (state.chart != want) throw ChartMismatch("evolve: state chart does not match the equation");
  if (eq != Equation::Harmonic) {
    require_beltrami_domain(kind, state.time, "evolve");
    require_window(kind, state.time, target, steps, "evolve");
  }
  guard(state, opts.check_boundary, opts.boundary_eps, "evolve (start)");

  GridState out;
  switch (eq) {
    case Equation::Extraordinary:
      out = free_flow(state, target, steps);
      break;
    case Equation::Harmonic:
      out = harmonic_flow(kind, state, target, steps);
      break;
    case Equation::OrdinaryNH: {
      const GridState tilde = gauge_map(GaugeDirection::PsiToTilde, kind, state);
      out = gauge_map(GaugeDirection::TildeToPsi, kind, free_flow(tilde, target, steps));
      break;
    }
  }
  guard(out, opts.check_boundary, opts.boundary_eps, "evolve (end)");
  return out;
}

GridState crank_nicolson(const SpacetimeKind& kind, const GridState& state, double target, int steps,
                         const CrankNicolsonOptions& opts) {
  validate(state);
  if (state.dim() != 1) throw Unsupported("crank_nicolson: only d = 1 is implemented");
  if (state.chart != Chart::Beltrami) throw ChartMismatch("crank_nicolson: Beltrami chart required");
  if (steps < 1) throw InvalidArgument("crank_nicolson: steps must be positive");
  if (opts.fd_order < 2 || opts.fd_order % 2 != 0)
    throw InvalidArgument("crank_nicolson: fd_order must be even");
  require_beltrami_domain(kind, state.time, "crank_nicolson");
  require_window(kind, state.time, target, steps, "crank_nicolson");
  guard(state, opts.check_boundary, opts.boundary_eps, "crank_nicolson (start)");

  const int n = state.grid.n;
  const double h = state.grid.spacing();
  const int half = opts.fd_order / 2;
  if (2 * half + 1 > n) throw InvalidArgument("crank_nicolson: grid too small for stencil");
  std::vector<double> offsets;
  for (int j = -half; j <= half; ++j) offsets.push_back(j * h);
  const auto w1 = fd_weights(0.0, offsets, 1);
  const auto w2 = fd_weights(0.0, offsets, 2);

  const double hbar = state.hbar, m = state.mass, s2 = kind.signed_nu2();
  const Complex i(0.0, 1.0);
  auto hamiltonian = [&](double t) {
    const double sg = sigma(kind, t);
    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(static_cast<std::size_t>(n * (2 * half + 2)));
    for (int r = 0; r < n; ++r) {
      const double x = state.grid.coordinate(r);
      for (int j = -half; j <= half; ++j) {
        const int c = ((r + j) % n + n) % n;
        const auto w = static_cast<std::size_t>(j + half);
        const Complex v = -hbar * hbar / (2.0 * m) * w2[w] + i * hbar * s2 * t * x / sg * w1[w];
        trip.emplace_back(r, c, v);
      }
      trip.emplace_back(r, r, Complex(-s2 * m * x * x / (2.0 * sg * sg)));
    }
    Eigen::SparseMatrix<Complex> hm(n, n);
    hm.setFromTriplets(trip.begin(), trip.end());
    return hm;
  };

  GridState s = state;
  const double dt = (target - state.time) / steps;
  Eigen::SparseMatrix<Complex> eye(n, n);
  eye.setIdentity();
  for (int k = 0; k < steps; ++k) {
    const Eigen::SparseMatrix<Complex> hm = hamiltonian(s.time + 0.5 * dt);
    const Complex c = i * dt / (2.0 * hbar);
    Eigen::SparseMatrix<Complex> lhs = eye + c * hm;
    const Eigen::SparseMatrix<Complex> rhs = eye - c * hm;
    Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu;
    lhs.makeCompressed();
    lu.compute(lhs);
    if (lu.info() != Eigen::Success) throw Error("crank_nicolson: factorisation failed");
    s.values = lu.solve(CVector(rhs * s.values));
    s.time = state.time + (k + 1) * dt;
  }
  s.time = target;
  guard(s, opts.check_boundary, opts.boundary_eps, "crank_nicolson (end)");
  return s;
}

}  // namespace nhlab::quantum
