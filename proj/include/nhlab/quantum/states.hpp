#pragma once

// Closed-form states sampled on a grid.

#include "nhlab/quantum/grid.hpp"

namespace nhlab::quantum {

enum class AnalyticState {
  PlaneWaveFree,   // psi-tilde = e^{(i/hbar)(p.x - p^2 t/2m)}, Beltrami chart
  OscGroundANH,    // e^{-m nu q^2/2hbar - i d nu tau/2}, static chart of an ANH kind
  GaussianPacket,  // freely spreading normalised Gaussian, Beltrami chart
};

struct AnalyticParams {
  SpacetimeKind kind = SpacetimeKind::galilei();
  GridSpec grid;
  double time = 0.0;
  double hbar = 1.0;
  double mass = 1.0;
  Point momentum;  // p, or p0 of the packet; empty means zero
  Point center;    // x0 of the packet at t = 0; empty means zero
  double width = 1.0;
};

GridState analytic_state(AnalyticState which, const AnalyticParams& p);

/// Free Gaussian packet with |psi(0, x)|^2 a normal density of standard deviation w.
Complex gaussian_packet(const Point& x, double t, const Point& x0, const Point& p0, double w,
                        double hbar, double mass);

/// e^{(i/hbar)(p.x - p^2 t/2m)}.
Complex plane_wave(const Point& x, double t, const Point& p, double hbar, double mass);

}  // namespace nhlab::quantum
