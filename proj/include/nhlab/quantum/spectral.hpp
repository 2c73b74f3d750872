#pragma once

// Fourier-space operations on GridState values: derivatives, free propagation
// factors and trigonometric resampling under coordinate pullbacks.

#include <functional>

#include "nhlab/quantum/grid.hpp"

namespace nhlab::quantum {

/// In-place FFT along every axis; the inverse is normalised.
void fft(const GridSpec& g, CVector& values, bool inverse);

/// Angular wavenumbers of an axis in FFT order, Nyquist counted as -N/2.
RVector wavenumbers(const GridSpec& g);

CVector laplacian(const GridSpec& g, const CVector& values);
CVector gradient(const GridSpec& g, const CVector& values, int axis);
/// sum_i x^i d_i psi.
CVector radial_derivative(const GridSpec& g, const CVector& values);

/// How values outside the source box are treated when resampling.
enum class ResamplePolicy {
  Localized,  // zero outside the box; source and image checked against the boundary shell
  Periodic,   // periodic extension (plane waves and other extended states)
};

struct ResampleOptions {
  ResamplePolicy policy = ResamplePolicy::Localized;
  double boundary_eps = kDefaultBoundaryEps;
};

/// Values of the trigonometric interpolant of `src` at x = A x' + b for every
/// point x' of `out`. Diagonal A is handled axis by axis.
CVector resample_affine(const GridState& src, const GridSpec& out, const Eigen::MatrixXd& a,
                        const Point& b, const ResampleOptions& opts);

}  // namespace nhlab::quantum
