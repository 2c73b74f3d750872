#include "nhlab/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace nhlab::io {

namespace {

using Vector = Vec<double>;

static_assert(std::endian::native == std::endian::little, "binary container assumes a little-endian host");

constexpr char kMagic[4] = {'N', 'H', 'G', 'S'};
constexpr std::uint32_t kVersion = 1;

Json vector_to_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vector vector_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + ": expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ConfigError(std::string(what) + ": expected an array of numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("field '") + key + "' has the wrong type");
  }
}

Json header_of(const quantum::GridState& s) {
  return Json{{"chart", to_string(s.chart)}, {"time", s.time}, {"d", s.grid.dim}, {"N", s.grid.n},
              {"L", s.grid.length},          {"hbar", s.hbar}, {"mass", s.mass}};
}

quantum::GridState state_from_header(const Json& h) {
  quantum::GridState s;
  s.chart = parse_chart(field<std::string>(h, "chart"));
  s.time = field<double>(h, "time");
  s.grid = {field<int>(h, "d"), field<int>(h, "N"), field<double>(h, "L")};
  s.hbar = field<double>(h, "hbar");
  s.mass = field<double>(h, "mass");
  try {
    quantum::validate(s.grid);
  } catch (const Error& e) {
    throw ConfigError(std::string("grid state header: ") + e.what());
  }
  s.values = quantum::CVector::Zero(static_cast<Eigen::Index>(s.grid.size()));
  return s;
}

void csv_row(std::ostream& os, const std::vector<double>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
  os << '\n';
}

void csv_header(std::ostream& os, const std::vector<std::string>& cols) {
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
}

std::vector<std::string> indexed(const std::string& prefix, int d, const std::string& suffix = "") {
  std::vector<std::string> out;
  for (int i = 1; i <= d; ++i) out.push_back(prefix + std::to_string(i) + suffix);
  return out;
}

}  // namespace

Variant parse_variant(const std::string& name) {
  if (name == "nh") return Variant::NH;
  if (name == "anh") return Variant::ANH;
  if (name == "galilei") return Variant::Galilei;
  throw ConfigError("unknown kind '" + name + "' (expected nh, anh or galilei)");
}

Chart parse_chart(const std::string& name) {
  if (name == "beltrami") return Chart::Beltrami;
  if (name == "static") return Chart::Static;
  if (name == "linear") return Chart::Linear;
  throw ConfigError("unknown chart '" + name + "'");
}

Json kind_to_json(const SpacetimeKind& kind) {
  return Json{{"kind", to_string(kind.variant())}, {"nu", kind.nu()}};
}

SpacetimeKind kind_from_json(const Json& j) {
  const Variant v = parse_variant(field<std::string>(j, "kind"));
  const double nu = v == Variant::Galilei ? 0.0 : field<double>(j, "nu");
  try {
    return SpacetimeKind::make(v, nu);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

Json transform_to_json(const NHTransform& g) {
  Json o = Json::array();
  for (Eigen::Index r = 0; r < g.rotation.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < g.rotation.cols(); ++c) row.push_back(g.rotation(r, c));
    o.push_back(row);
  }
  return Json{{"O", o}, {"a_t", g.time_shift}, {"a", vector_to_json(g.shift)}, {"u", vector_to_json(g.boost)}};
}

NHTransform transform_from_json(const Json& j) {
  NHTransform g;
  g.time_shift = field<double>(j, "a_t");
  g.shift = vector_from_json(field<Json>(j, "a"), "a");
  g.boost = vector_from_json(field<Json>(j, "u"), "u");
  const int d = g.dim();
  if (g.boost.size() != d) throw ConfigError("transform: 'a' and 'u' differ in length");
  if (j.contains("O")) {
    const Json& o = j.at("O");
    if (!o.is_array() || static_cast<int>(o.size()) != d) throw ConfigError("transform: 'O' must be d x d");
    g.rotation.resize(d, d);
    for (int r = 0; r < d; ++r) {
      const Vector row = vector_from_json(o[static_cast<std::size_t>(r)], "O");
      if (row.size() != d) throw ConfigError("transform: 'O' must be d x d");
      g.rotation.row(r) = row.transpose();
    }
  } else {
    g.rotation = Mat<double>::Identity(d, d);
  }
  try {
    validate(SpacetimeKind::galilei(), g);  // shape and SO(d) only
  } catch (const Error& e) {
    throw ConfigError(std::string("transform: ") + e.what());
  }
  return g;
}

Json report_to_json(const algebra::BracketReport& r) {
  Json out = Json::array();
  for (const auto& e : r.entries)
    out.push_back(Json{{"bracket", e.bracket},
                       {"expected", e.expected},
                       {"max_abs_deviation", e.max_abs_deviation},
                       {"pass", e.pass}});
  return out;
}

Json flux_to_json(const gravity::FluxResult& f) {
  return Json{{"flux", f.flux}, {"expected", f.expected}, {"relative_error", std::abs(f.flux / f.expected - 1.0)}};
}

Json grid_state_to_json(const quantum::GridState& s) {
  quantum::validate(s);
  Json j = header_of(s);
  Json v = Json::array();
  for (Eigen::Index k = 0; k < s.values.size(); ++k) {
    v.push_back(s.values[k].real());
    v.push_back(s.values[k].imag());
  }
  j["values"] = std::move(v);
  return j;
}

quantum::GridState grid_state_from_json(const Json& j) {
  quantum::GridState s = state_from_header(j);
  const Json v = field<Json>(j, "values");
  if (!v.is_array() || v.size() != 2 * s.grid.size()) throw ConfigError("grid state: 'values' must hold 2 N^d numbers");
  for (std::size_t k = 0; k < s.grid.size(); ++k)
    s.values[static_cast<Eigen::Index>(k)] = {v[2 * k].get<double>(), v[2 * k + 1].get<double>()};
  return s;
}

void write_grid_state_binary(std::ostream& os, const quantum::GridState& s) {
  quantum::validate(s);
  const std::string header = header_of(s).dump();
  const auto length = static_cast<std::uint64_t>(header.size());
  os.write(kMagic, 4);
  os.write(reinterpret_cast<const char*>(&kVersion), sizeof kVersion);
  os.write(reinterpret_cast<const char*>(&length), sizeof length);
  os.write(header.data(), static_cast<std::streamsize>(header.size()));
  // std::complex<double> is laid out as (re, im)
  os.write(reinterpret_cast<const char*>(s.values.data()),
           static_cast<std::streamsize>(s.values.size() * 2 * static_cast<Eigen::Index>(sizeof(double))));
  if (!os) throw Error("grid state: write failed");
}

quantum::GridState read_grid_state_binary(std::istream& is) {
  char magic[4];
  std::uint32_t version = 0;
  std::uint64_t length = 0;
  is.read(magic, 4);
  is.read(reinterpret_cast<char*>(&version), sizeof version);
  is.read(reinterpret_cast<char*>(&length), sizeof length);
  if (!is || std::string(magic, 4) != std::string(kMagic, 4)) throw ConfigError("grid state: not an NHGS container");
  if (version != kVersion) throw ConfigError("grid state: unsupported container version");
  if (length > (1u << 20)) throw ConfigError("grid state: header too long");
  std::string header(length, '\0');
  is.read(header.data(), static_cast<std::streamsize>(length));
  Json h;
  try {
    h = Json::parse(header);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("grid state header: ") + e.what());
  }
  quantum::GridState s = state_from_header(h);
  is.read(reinterpret_cast<char*>(s.values.data()),
          static_cast<std::streamsize>(s.values.size() * 2 * static_cast<Eigen::Index>(sizeof(double))));
  if (!is) throw ConfigError("grid state: truncated payload");
  return s;
}

void write_path_csv(std::ostream& os, const classical::PathSample& path) {
  std::vector<std::string> cols{"t"};
  for (auto& c : indexed("x", path.dim())) cols.push_back(c);
  csv_header(os, cols);
  for (std::size_t i = 0; i < path.size(); ++i) {
    std::vector<double> row{path.times[i]};
    for (Eigen::Index a = 0; a < path.positions[i].size(); ++a) row.push_back(path.positions[i][a]);
    csv_row(os, row);
  }
}

void write_trajectory_csv(std::ostream& os, const GeodesicTrajectory& traj) {
  const int d = traj.states.empty() ? 0 : static_cast<int>(traj.states.front().x.size());
  std::vector<std::string> cols{"lambda", "t"};
  for (auto& c : indexed("x", d)) cols.push_back(c);
  cols.push_back("dt_dlambda");
  for (auto& c : indexed("dx", d, "_dlambda")) cols.push_back(c);
  csv_header(os, cols);
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const auto& st = traj.states[i];
    std::vector<double> row{traj.lambda[i], st.t};
    for (Eigen::Index a = 0; a < st.x.size(); ++a) row.push_back(st.x[a]);
    row.push_back(st.dt_dl);
    for (Eigen::Index a = 0; a < st.dx_dl.size(); ++a) row.push_back(st.dx_dl[a]);
    csv_row(os, row);
  }
}

void write_orbit_csv(std::ostream& os, const gravity::Orbit& orbit) {
  csv_header(os, {"t", "x", "y", "z", "vx", "vy", "vz"});
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    const auto& x = orbit.positions[i];
    const auto& v = orbit.velocities[i];
    csv_row(os, {orbit.times[i], x[0], x[1], x[2], v[0], v[1], v[2]});
  }
}

void write_density_csv(std::ostream& os, const quantum::GridSpec& grid, const quantum::DensityReport& r) {
  std::vector<std::string> cols = indexed("x", grid.dim);
  cols.push_back("rho_ordinary");
  cols.push_back("rho_invariant");
  for (auto& c : indexed("j", grid.dim)) cols.push_back(c);
  csv_header(os, cols);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    const quantum::Point x = grid.point(k);
    std::vector<double> row(x.data(), x.data() + x.size());
    row.push_back(r.rho_ordinary[i]);
    row.push_back(r.rho_invariant[i]);
    for (const auto& j : r.flux) row.push_back(j[i]);
    csv_row(os, row);
  }
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return Json::parse(in, nullptr, true, true);  // comments allowed
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace nhlab::io
