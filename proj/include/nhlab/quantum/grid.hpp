#pragma once

// Wave functions sampled on a uniform periodic box [-L/2, L/2)^d, row-major
// with axis 0 slowest.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "nhlab/geometry.hpp"

namespace nhlab::quantum {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Point = Vec<double>;

/// Fraction of the box width, per side, counted as the boundary shell.
inline constexpr double kBoundaryShell = 0.05;
inline constexpr double kDefaultBoundaryEps = 1e-8;

struct GridSpec {
  int dim = 1;
  int n = 256;         // points per axis, a power of two
  double length = 20;  // box extent per axis

  std::size_t size() const;
  double spacing() const { return length / n; }
  double cell_volume() const;
  double coordinate(int j) const { return -0.5 * length + j * spacing(); }
  /// Coordinates of the flat index k.
  Point point(std::size_t k) const;
  /// Per-axis multi-index of the flat index k.
  std::vector<int> multi_index(std::size_t k) const;
  bool operator==(const GridSpec&) const = default;
};

/// Throws InvalidArgument unless N is a power of two, L > 0 and 1 <= d <= 3.
void validate(const GridSpec& g);

/// Which wave function a state holds: psi of the ordinary NH equation or
/// psi-tilde of the free (extraordinary) one.
enum class Representation { PsiOrdinary, PsiTilde };

struct GridState {
  Chart chart = Chart::Beltrami;
  double time = 0.0;  // t (Beltrami) or tau (Static)
  GridSpec grid;
  double hbar = 1.0;
  double mass = 1.0;
  CVector values;

  int dim() const { return grid.dim; }
};

/// Shape, chart and parameter checks.
void validate(const GridState& s);

/// Samples f(x) at every grid point.
template <typename F>
GridState sample(Chart chart, double time, const GridSpec& grid, double hbar, double mass, F&& f) {
  validate(grid);
  GridState s{chart, time, grid, hbar, mass, CVector(static_cast<Eigen::Index>(grid.size()))};
  for (std::size_t k = 0; k < grid.size(); ++k) s.values[static_cast<Eigen::Index>(k)] = f(grid.point(k));
  return s;
}

/// Grid quadrature of |psi|^2.
double norm2(const GridState& s);
/// Share of norm2 within the outer boundary shell.
double boundary_fraction(const GridState& s);
/// Throws BoundaryLeak when boundary_fraction exceeds eps.
void require_contained(const GridState& s, double eps, const char* where);

/// L2 distance over norm of a, both on the same grid.
double relative_l2_distance(const GridState& a, const GridState& b);
double max_abs_difference(const GridState& a, const GridState& b);
void require_same_grid(const GridState& a, const GridState& b, const char* where);

}  // namespace nhlab::quantum
