#include "nhlab/quantum/grid.hpp"

#include <cmath>
#include <string>

namespace nhlab::quantum {

std::size_t GridSpec::size() const {
  std::size_t total = 1;
  for (int i = 0; i < dim; ++i) total *= static_cast<std::size_t>(n);
  return total;
}

double GridSpec::cell_volume() const { return std::pow(spacing(), dim); }

std::vector<int> GridSpec::multi_index(std::size_t k) const {
  std::vector<int> idx(static_cast<std::size_t>(dim));
  for (int i = dim - 1; i >= 0; --i) {
    idx[static_cast<std::size_t>(i)] = static_cast<int>(k % static_cast<std::size_t>(n));
    k /= static_cast<std::size_t>(n);
  }
  return idx;
}

Point GridSpec::point(std::size_t k) const {
  const auto idx = multi_index(k);
  Point x(dim);
  for (int i = 0; i < dim; ++i) x[i] = coordinate(idx[static_cast<std::size_t>(i)]);
  return x;
}

void validate(const GridSpec& g) {
  if (g.dim < 1 || g.dim > 3) throw InvalidArgument("grid: d must be 1, 2 or 3");
  if (g.n < 2 || (g.n & (g.n - 1)) != 0) throw InvalidArgument("grid: N must be a power of two");
  if (!(g.length > 0.0) || !std::isfinite(g.length)) throw InvalidArgument("grid: L must be positive");
}

void validate(const GridState& s) {
  validate(s.grid);
  if (s.chart == Chart::Linear) throw ChartMismatch("grid state: linear chart is not supported");
  if (!(s.hbar > 0.0) || !(s.mass > 0.0)) throw InvalidArgument("grid state: hbar, m must be positive");
  if (static_cast<std::size_t>(s.values.size()) != s.grid.size())
    throw GridMismatch("grid state: value count does not match N^d");
}

double norm2(const GridState& s) { return s.values.squaredNorm() * s.grid.cell_volume(); }

double boundary_fraction(const GridState& s) {
  const double edge = (0.5 - kBoundaryShell) * s.grid.length;
  double shell = 0.0, total = 0.0;
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    const double w = std::norm(s.values[static_cast<Eigen::Index>(k)]);
    total += w;
    const auto idx = s.grid.multi_index(k);
    for (int j : idx) {
      if (std::abs(s.grid.coordinate(j)) >= edge) {
        shell += w;
        break;
      }
    }
  }
  return total > 0.0 ? shell / total : 0.0;
}

void require_contained(const GridState& s, double eps, const char* where) {
  const double f = boundary_fraction(s);
  if (f > eps)
    throw BoundaryLeak(std::string(where) + ": boundary mass fraction " + std::to_string(f) +
                       " exceeds guard");
}

void require_same_grid(const GridState& a, const GridState& b, const char* where) {
  if (!(a.grid == b.grid) || a.values.size() != b.values.size())
    throw GridMismatch(std::string(where) + ": states live on different grids");
}

double relative_l2_distance(const GridState& a, const GridState& b) {
  require_same_grid(a, b, "relative_l2_distance");
  const double na = a.values.norm();
  return na > 0.0 ? (a.values - b.values).norm() / na : (a.values - b.values).norm();
}

double max_abs_difference(const GridState& a, const GridState& b) {
  require_same_grid(a, b, "max_abs_difference");
  return (a.values - b.values).cwiseAbs().maxCoeff();
}

}  // namespace nhlab::quantum
