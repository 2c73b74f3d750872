#include "nhlab/quantum/spectral.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/LU>
#include <unsupported/Eigen/FFT>

namespace nhlab::quantum {

namespace {

using Dims = std::vector<int>;

// Row-major tensor with extents `dims`; replaces axis `axis` (extent dims[axis])
// by m.rows() entries: out[.., r, ..] = sum_j m(r, j) in[.., j, ..].
CVector apply_along_axis(const CVector& in, Dims& dims, int axis, const Eigen::MatrixXcd& m) {
  const auto a = static_cast<std::size_t>(axis);
  std::size_t outer = 1, inner = 1;
  for (std::size_t i = 0; i < a; ++i) outer *= static_cast<std::size_t>(dims[i]);
  for (std::size_t i = a + 1; i < dims.size(); ++i) inner *= static_cast<std::size_t>(dims[i]);
  const auto n_in = static_cast<std::size_t>(dims[a]);
  const auto n_out = static_cast<std::size_t>(m.rows());
  CVector out(static_cast<Eigen::Index>(outer * n_out * inner));
  Eigen::MatrixXcd block(n_in, inner);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t j = 0; j < n_in; ++j)
      for (std::size_t i = 0; i < inner; ++i)
        block(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
            in[static_cast<Eigen::Index>((o * n_in + j) * inner + i)];
    const Eigen::MatrixXcd res = m * block;
    for (std::size_t r = 0; r < n_out; ++r)
      for (std::size_t i = 0; i < inner; ++i)
        out[static_cast<Eigen::Index>((o * n_out + r) * inner + i)] =
            res(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i));
  }
  dims[a] = static_cast<int>(n_out);
  return out;
}

// Row of the trigonometric basis at x: e^{i k_m (x - x0)}, Nyquist as cosine.
Eigen::RowVectorXcd basis_row(const GridSpec& g, const RVector& k, double x) {
  Eigen::RowVectorXcd row(g.n);
  const double shift = x + 0.5 * g.length;
  for (int m = 0; m < g.n; ++m) {
    const double phase = k[m] * shift;
    row[m] = (m == g.n / 2) ? Complex(std::cos(phase), 0.0) : std::polar(1.0, phase);
  }
  return row;
}

bool inside_box(const GridSpec& g, double x) {
  return x >= -0.5 * g.length && x < 0.5 * g.length;
}

CVector coefficients(const GridState& src) {
  CVector c = src.values;
  fft(src.grid, c, false);
  c /= static_cast<double>(src.grid.size());
  return c;
}

}  // namespace

void fft(const GridSpec& g, CVector& values, bool inverse) {
  thread_local Eigen::FFT<double> engine;  // keeps its plans between calls
  const auto n = static_cast<std::size_t>(g.n);
  std::vector<Complex> line(n), out(n);
  std::size_t stride = 1;
  for (int axis = g.dim - 1; axis >= 0; --axis) {
    const std::size_t block = stride * n;
    for (std::size_t base = 0; base < g.size(); base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        for (std::size_t j = 0; j < n; ++j)
          line[j] = values[static_cast<Eigen::Index>(base + off + j * stride)];
        if (inverse)
          engine.inv(out, line);
        else
          engine.fwd(out, line);
        for (std::size_t j = 0; j < n; ++j)
          values[static_cast<Eigen::Index>(base + off + j * stride)] = out[j];
      }
    }
    stride = block;
  }
}

RVector wavenumbers(const GridSpec& g) {
  RVector k(g.n);
  const double unit = 2.0 * std::numbers::pi / g.length;
  for (int m = 0; m < g.n; ++m) k[m] = unit * (m < g.n / 2 ? m : m - g.n);
  return k;
}

CVector laplacian(const GridSpec& g, const CVector& values) {
  CVector c = values;
  fft(g, c, false);
  const RVector k = wavenumbers(g);
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    double k2 = 0.0;
    for (int m : g.multi_index(idx)) k2 += k[m] * k[m];
    c[static_cast<Eigen::Index>(idx)] *= -k2;
  }
  fft(g, c, true);
  return c;
}

CVector gradient(const GridSpec& g, const CVector& values, int axis) {
  if (axis < 0 || axis >= g.dim) throw InvalidArgument("gradient: axis out of range");
  CVector c = values;
  fft(g, c, false);
  const RVector k = wavenumbers(g);
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const int m = g.multi_index(idx)[static_cast<std::size_t>(axis)];
    // the Nyquist cosine has zero derivative at the nodes
    c[static_cast<Eigen::Index>(idx)] *= (m == g.n / 2) ? Complex(0.0) : Complex(0.0, k[m]);
  }
  fft(g, c, true);
  return c;
}

CVector radial_derivative(const GridSpec& g, const CVector& values) {
  CVector out = CVector::Zero(values.size());
  for (int axis = 0; axis < g.dim; ++axis) {
    const CVector d = gradient(g, values, axis);
    for (std::size_t idx = 0; idx < g.size(); ++idx)
      out[static_cast<Eigen::Index>(idx)] +=
          g.coordinate(g.multi_index(idx)[static_cast<std::size_t>(axis)]) *
          d[static_cast<Eigen::Index>(idx)];
  }
  return out;
}

CVector resample_affine(const GridState& src, const GridSpec& out, const Eigen::MatrixXd& a,
                        const Point& b, const ResampleOptions& opts) {
  validate(src);
  validate(out);
  const int d = src.dim();
  if (out.dim != d || a.rows() != d || a.cols() != d || b.size() != d)
    throw ResampleError("resample: dimension mismatch between source and target grids");
  if (opts.policy == ResamplePolicy::Localized) {
    require_contained(src, opts.boundary_eps, "resample (source)");
    // source mass whose image lands in the target shell or beyond it
    const Eigen::MatrixXd inv = a.inverse();
    const double edge = (0.5 - kBoundaryShell) * out.length;
    double lost = 0.0, total = 0.0;
    for (std::size_t k = 0; k < src.grid.size(); ++k) {
      const double w = std::norm(src.values[static_cast<Eigen::Index>(k)]);
      total += w;
      if ((inv * (src.grid.point(k) - b)).cwiseAbs().maxCoeff() >= edge) lost += w;
    }
    if (total > 0.0 && lost / total > opts.boundary_eps)
      throw BoundaryLeak("resample: image of the state reaches the target boundary shell");
  }

  const CVector c = coefficients(src);
  const RVector k = wavenumbers(src.grid);
  const bool localized = opts.policy == ResamplePolicy::Localized;
  auto wrap = [&](double x) {
    if (localized) return x;
    const double L = src.grid.length;
    return x - L * std::floor((x + 0.5 * L) / L);
  };

  const bool diagonal = (a - Eigen::MatrixXd(a.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0;
  if (diagonal) {
    Dims dims(static_cast<std::size_t>(d), src.grid.n);
    CVector t = c;
    for (int axis = 0; axis < d; ++axis) {
      Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(out.n, src.grid.n);
      for (int j = 0; j < out.n; ++j) {
        const double x = wrap(a(axis, axis) * out.coordinate(j) + b[axis]);
        if (localized && !inside_box(src.grid, x)) continue;
        e.row(j) = basis_row(src.grid, k, x);
      }
      t = apply_along_axis(t, dims, axis, e);
    }
    return t;
  }

  CVector result(static_cast<Eigen::Index>(out.size()));
  std::vector<Eigen::RowVectorXcd> rows(static_cast<std::size_t>(d), Eigen::RowVectorXcd(src.grid.n));
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    const Point x = a * out.point(idx) + b;
    bool outside = false;
    for (int axis = 0; axis < d; ++axis) {
      const double xa = wrap(x[axis]);
      if (localized && !inside_box(src.grid, xa)) outside = true;
      rows[static_cast<std::size_t>(axis)] = basis_row(src.grid, k, xa);
    }
    if (outside) {
      result[static_cast<Eigen::Index>(idx)] = 0.0;
      continue;
    }
    // contract the last axis first
    Dims dims(static_cast<std::size_t>(d), src.grid.n);
    CVector t = c;
    for (int axis = d - 1; axis >= 0; --axis)
      t = apply_along_axis(t, dims, axis, rows[static_cast<std::size_t>(axis)]);
    result[static_cast<Eigen::Index>(idx)] = t[0];
  }
  return result;
}

}  // namespace nhlab::quantum
