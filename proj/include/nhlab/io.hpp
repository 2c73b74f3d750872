#pragma once

// JSON, binary and CSV forms of the library's values. Numbers are written
// with 17 significant digits so output is byte-reproducible and round-trips.
//
// GridState binary container:
//   "NHGS" | u32 version = 1 | u64 header length | header JSON (UTF-8)
//   | N^d pairs of little-endian float64 (re, im), row-major, axis 0 slowest
// The header carries {chart, time, d, N, L, hbar, mass}.

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "nhlab/algebra/brackets.hpp"
#include "nhlab/anomalous.hpp"
#include "nhlab/classical/mechanics.hpp"
#include "nhlab/gravity.hpp"
#include "nhlab/group.hpp"
#include "nhlab/quantum/density.hpp"
#include "nhlab/quantum/grid.hpp"

namespace nhlab::io {

using Json = nlohmann::json;

Variant parse_variant(const std::string& name);  // "nh" | "anh" | "galilei"
Chart parse_chart(const std::string& name);      // "beltrami" | "static" | "linear"

Json kind_to_json(const SpacetimeKind& kind);
SpacetimeKind kind_from_json(const Json& j);

/// {O (row-major nested arrays), a_t, a, u}.
Json transform_to_json(const NHTransform& g);
NHTransform transform_from_json(const Json& j);

/// List of {bracket, expected, max_abs_deviation, pass}.
Json report_to_json(const algebra::BracketReport& r);

Json flux_to_json(const gravity::FluxResult& f);

/// {chart, time, d, N, L, hbar, mass, values: [re0, im0, re1, im1, ...]}.
Json grid_state_to_json(const quantum::GridState& s);
quantum::GridState grid_state_from_json(const Json& j);

void write_grid_state_binary(std::ostream& os, const quantum::GridState& s);
quantum::GridState read_grid_state_binary(std::istream& is);

/// t, x1..xd
void write_path_csv(std::ostream& os, const classical::PathSample& path);
/// lambda, t, x1..xd, dt/dlambda, dx1/dlambda..dxd/dlambda
void write_trajectory_csv(std::ostream& os, const GeodesicTrajectory& traj);
/// t, x, y, z, vx, vy, vz
void write_orbit_csv(std::ostream& os, const gravity::Orbit& orbit);
/// x1..xd, rho_ordinary, rho_invariant, j1..jd
void write_density_csv(std::ostream& os, const quantum::GridSpec& grid, const quantum::DensityReport& r);

/// Shortest decimal that round-trips ("%.17g").
std::string format_number(double v);

/// Reads a whole JSON file; ConfigError on I/O or parse failure.
Json read_json_file(const std::string& path);
/// Writes j with 2-space indentation and a trailing newline.
void write_json_file(const std::string& path, const Json& j);

}  // namespace nhlab::io
