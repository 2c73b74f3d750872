// nhlab: verification suites and config-driven simulations.
//
//   nhlab verify   [--suite S] [--kind K] [--nu X] [--C X] [--d N] [--seed N] [--config F] [--out F]
//   nhlab simulate --config F [--out DIR] [--kind K] [--nu X] [--C X] [--seed N]
//
// Exit codes: 0 pass, 1 tolerance or numerical failure, 2 config error,
// 3 domain exit.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nhlab/anomalous.hpp"
#include "nhlab/classical/mechanics.hpp"
#include "nhlab/errors.hpp"
#include "nhlab/gravity.hpp"
#include "nhlab/io.hpp"
#include "nhlab/quantum/density.hpp"
#include "nhlab/quantum/evolve.hpp"
#include "nhlab/quantum/states.hpp"
#include "nhlab/verify.hpp"

namespace fs = std::filesystem;

namespace {

using nhlab::ConfigError;
using nhlab::SpacetimeKind;
using nhlab::Variant;
using nhlab::io::Json;
using V = nhlab::Vec<double>;

enum Exit : int { kPass = 0, kFail = 1, kConfig = 2, kDomain = 3 };

// ---- JSON access; every miss is a ConfigError ---------------------------

void allow_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [k, _] : j.items()) {
    bool ok = false;
    for (const char* a : keys) ok = ok || k == a;
    if (!ok) throw ConfigError(where + ": unknown key '" + k + "'");
  }
}

template <typename T>
T need(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(where + ": '" + key + "' has the wrong type");
  }
}

// Reads an optional key and writes the default back, so the emitted
// parameters list every value used.
template <typename T>
T opt(Json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) j[key] = fallback;
  return need<T>(j, key, where);
}

V vec(const Json& j, const char* key, int d, const std::string& where) {
  const auto a = need<std::vector<double>>(j, key, where);
  if (static_cast<int>(a.size()) != d)
    throw ConfigError(where + ": '" + key + "' needs " + std::to_string(d) + " components");
  return Eigen::Map<const V>(a.data(), d);
}

int positive_int(const Json& j, const char* key, const std::string& where) {
  const int n = need<int>(j, key, where);
  if (n < 1) throw ConfigError(where + ": '" + key + "' must be positive");
  return n;
}

// ---- shared physical parameters --------------------------------------

struct Physics {
  Variant variant = Variant::NH;
  double nu = 1.0;
  double hbar = 1.0, mass = 1.0, G = 1.0;
  std::uint64_t seed = 12345;

  // nu = 0 is the Galilei contraction of either family
  SpacetimeKind kind() const {
    try {
      if (variant == Variant::Galilei || nu == 0.0) return SpacetimeKind::galilei();
      return SpacetimeKind::make(variant, nu);
    } catch (const nhlab::InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  }
};

struct Overrides {
  std::string kind;
  double nu = 0.0, C = 0.0;
  int d = 0;
  std::uint64_t seed = 0;
  CLI::Option *kind_opt = nullptr, *nu_opt = nullptr, *C_opt = nullptr, *d_opt = nullptr,
              *seed_opt = nullptr;

  void attach(CLI::App* app, bool with_d) {
    kind_opt = app->add_option("--kind", kind, "nh | anh | galilei")->check(CLI::IsMember({"nh", "anh", "galilei"}));
    nu_opt = app->add_option("--nu", nu, "curvature scale nu");
    C_opt = app->add_option("--C", C, "anomaly parameter C (gamma for Galilei)");
    if (with_d) d_opt = app->add_option("--d", d, "spatial dimension 1..3");
    seed_opt = app->add_option("--seed", seed, "seed of the random sampling");
  }
};

// ---- verify ---------------------------------------------------------

int cmd_verify(const std::string& suite, const std::string& config, const std::string& out, const Overrides& o) {
  nhlab::verify::Config c;
  if (!config.empty()) nhlab::verify::apply_json(c, nhlab::io::read_json_file(config));
  if (*o.kind_opt) c.variant = nhlab::io::parse_variant(o.kind);
  if (*o.nu_opt) c.nu = o.nu;
  if (*o.C_opt) c.C = o.C;
  if (*o.d_opt) c.d = o.d;
  if (*o.seed_opt) c.seed = o.seed;
  nhlab::verify::validate(c, suite);

  const auto report = nhlab::verify::run(suite, c);
  const Json j = nhlab::verify::to_json(report);
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    nhlab::io::write_json_file(out, j);

  for (const auto& s : report.suites)
    for (const auto& e : s.entries)
      if (!e.pass)
        std::cerr << "FAIL " << e.suite << "." << e.check << ": " << nhlab::io::format_number(e.deviation)
                  << " > " << nhlab::io::format_number(e.tolerance) << "\n";
  return report.all_pass() ? kPass : kFail;
}

// ---- simulate -------------------------------------------------------

class Output {
 public:
  explicit Output(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  std::ofstream open(const std::string& name, bool binary = false) {
    std::ofstream f(dir_ / name, binary ? std::ios::binary : std::ios::out);
    if (!f) throw nhlab::Error("cannot write " + (dir_ / name).string());
    files_.push_back(name);
    return f;
  }
  const std::vector<std::string>& files() const { return files_; }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

nhlab::AnomalousConnection connection_of(const SpacetimeKind& k, double c) {
  return k.is_galilei() ? nhlab::AnomalousConnection::galilei(c) : nhlab::AnomalousConnection::make(k, c);
}

Json simulate_wavepacket(Json& s, const Physics& ph, Output& out) {
  using namespace nhlab::quantum;
  const std::string w = "simulation";
  allow_keys(s, {"type", "equation", "grid", "packet", "snapshots", "steps", "formats", "check_boundary"}, w);
  const std::string eq_name = opt<std::string>(s, "equation", "ordinary", w);
  Equation eq;
  Representation rep = Representation::PsiOrdinary;
  if (eq_name == "ordinary") {
    eq = Equation::OrdinaryNH;
  } else if (eq_name == "extraordinary") {
    eq = Equation::Extraordinary;
    rep = Representation::PsiTilde;
  } else if (eq_name == "harmonic") {
    eq = Equation::Harmonic;
  } else {
    throw ConfigError(w + ": equation must be ordinary, extraordinary or harmonic");
  }

  Json& gj = s["grid"];
  allow_keys(gj, {"d", "N", "L"}, "grid");
  const GridSpec grid{positive_int(gj, "d", "grid"), positive_int(gj, "N", "grid"), need<double>(gj, "L", "grid")};
  try {
    validate(grid);
  } catch (const nhlab::InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  const int d = grid.dim;

  if (!s.contains("packet")) s["packet"] = Json::object();
  Json& pj = s["packet"];
  allow_keys(pj, {"t0", "center", "momentum", "width"}, "packet");
  const double t0 = opt<double>(pj, "t0", 0.0, "packet");
  if (!pj.contains("center")) pj["center"] = std::vector<double>(d, 0.0);
  if (!pj.contains("momentum")) pj["momentum"] = std::vector<double>(d, 0.0);
  const V x0 = vec(pj, "center", d, "packet"), p0 = vec(pj, "momentum", d, "packet");
  const double width = opt<double>(pj, "width", 1.0, "packet");
  if (!(width > 0.0)) throw ConfigError("packet: width must be positive");

  const auto times = need<std::vector<double>>(s, "snapshots", w);
  double prev = t0;
  for (double t : times) {
    if (!(t > prev)) throw ConfigError(w + ": snapshot times must increase from t0");
    prev = t;
  }
  const int steps = opt<int>(s, "steps", 100, w);
  if (steps < 1) throw ConfigError(w + ": steps must be positive");
  const auto formats = opt<std::vector<std::string>>(s, "formats", {"csv"}, w);
  for (const auto& f : formats) {
    if (f != "csv" && f != "json" && f != "binary") throw ConfigError(w + ": unknown format '" + f + "'");
    if (f == "csv" && eq == Equation::Harmonic)
      throw ConfigError(w + ": density CSV needs the ordinary or extraordinary equation");
  }
  EvolveOptions eo;
  eo.check_boundary = opt<bool>(s, "check_boundary", true, w);

  const SpacetimeKind k = ph.kind();
  const nhlab::Chart chart = eq == Equation::Harmonic ? nhlab::Chart::Static : nhlab::Chart::Beltrami;
  GridState state = sample(chart, t0, grid, ph.hbar, ph.mass,
                           [&](const Point& x) { return gaussian_packet(x, t0, x0, p0, width, ph.hbar, ph.mass); });

  Json snaps = Json::array();
  auto emit = [&](std::size_t i) {
    const std::string stem = "snapshot_" + std::to_string(i);
    for (const auto& f : formats) {
      if (f == "csv") {
        auto os = out.open(stem + ".csv");
        nhlab::io::write_density_csv(os, grid, density_report(rep, k, state));
      } else if (f == "json") {
        auto os = out.open(stem + ".json");
        os << nhlab::io::grid_state_to_json(state).dump() << "\n";
      } else {
        auto os = out.open(stem + ".bin", true);
        nhlab::io::write_grid_state_binary(os, state);
      }
    }
    snaps.push_back({{"index", i}, {"time", state.time}, {"norm", norm2(state)}});
  };
  emit(0);
  for (std::size_t i = 0; i < times.size(); ++i) {
    state = evolve(eq, k, state, times[i], steps, eo);
    emit(i + 1);
  }
  return {{"snapshots", snaps}};
}

Json simulate_orbit(Json& s, const Physics& ph, Output& out) {
  using namespace nhlab::gravity;
  const std::string w = "simulation";
  allow_keys(s, {"type", "source", "initial", "t_end", "steps", "C"}, w);
  if (!s.contains("source")) s["source"] = Json::object();
  Json& sj = s["source"];
  allow_keys(sj, {"M", "position", "velocity"}, "source");
  const double M = opt<double>(sj, "M", 1.0, "source");
  if (!sj.contains("position")) sj["position"] = std::vector<double>(3, 0.0);
  if (!sj.contains("velocity")) sj["velocity"] = std::vector<double>(3, 0.0);
  const V X0 = vec(sj, "position", 3, "source"), U = vec(sj, "velocity", 3, "source");
  const PointSource src{M, ph.G, [X0, U](double t) { return V(X0 + U * t); }};

  Json& ij = s["initial"];
  allow_keys(ij, {"t", "x", "v"}, "initial");
  const OrbitState init{opt<double>(ij, "t", 0.0, "initial"), vec(ij, "x", 3, "initial"), vec(ij, "v", 3, "initial")};
  const double t_end = need<double>(s, "t_end", w);
  const int steps = positive_int(s, "steps", w);
  const SpacetimeKind k = ph.kind();

  Json res;
  Orbit orbit;
  if (s.contains("C")) {
    orbit = integrate_orbit(connection_of(k, need<double>(s, "C", w)), src, init, t_end, steps);
  } else {
    orbit = integrate_orbit(k, src, init, t_end, steps);
    res["law_residual"] = law_residual(k, src, orbit);
  }
  auto os = out.open("orbit.csv");
  nhlab::io::write_orbit_csv(os, orbit);
  res["samples"] = orbit.size();
  res["final"] = {{"t", orbit.times.back()},
                  {"x", std::vector<double>(orbit.positions.back().begin(), orbit.positions.back().end())}};
  return res;
}

Json simulate_geodesics(Json& s, const Physics& ph, Output& out) {
  const std::string w = "simulation";
  allow_keys(s, {"type", "C", "initial", "t_end", "steps"}, w);
  std::vector<double> cs;
  if (s.contains("C") && s["C"].is_number())
    cs = {need<double>(s, "C", w)};
  else
    cs = opt<std::vector<double>>(s, "C", {-1.0, 0.0, 1.0, 2.0}, w);

  Json& ij = s["initial"];
  allow_keys(ij, {"t", "x", "dt_dlambda", "dx_dlambda"}, "initial");
  if (!ij.contains("x")) throw ConfigError("initial: missing 'x'");
  const int d = static_cast<int>(need<std::vector<double>>(ij, "x", "initial").size());
  if (d < 1) throw ConfigError("initial: 'x' is empty");
  const nhlab::GeodesicState init{opt<double>(ij, "t", 0.0, "initial"), vec(ij, "x", d, "initial"),
                                  opt<double>(ij, "dt_dlambda", 1.0, "initial"), vec(ij, "dx_dlambda", d, "initial")};
  const double t_end = need<double>(s, "t_end", w);
  const int steps = positive_int(s, "steps", w);
  const SpacetimeKind k = ph.kind();

  Json runs = Json::array();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto conn = connection_of(k, cs[i]);
    const double span = nhlab::lambda_span(conn, init, t_end);
    const auto traj = nhlab::integrate_geodesic(conn, init, span, steps);
    const std::string name = "geodesic_" + std::to_string(i) + ".csv";
    auto os = out.open(name);
    nhlab::io::write_trajectory_csv(os, traj);
    runs.push_back({{"C", cs[i]},
                    {"file", name},
                    {"lambda_end", span},
                    {"straight_line_residual", nhlab::straight_line_residual(traj)},
                    {"first_integral_spread", nhlab::first_integral_spread(conn, traj)}});
  }
  return {{"geodesics", runs}};
}

Json simulate_eom(Json& s, const Physics& ph, Output& out) {
  const std::string w = "simulation";
  allow_keys(s, {"type", "initial", "t_end", "steps"}, w);
  Json& ij = s["initial"];
  allow_keys(ij, {"t", "x", "p"}, "initial");
  if (!ij.contains("x")) throw ConfigError("initial: missing 'x'");
  const int d = static_cast<int>(need<std::vector<double>>(ij, "x", "initial").size());
  const nhlab::classical::PhaseState init{opt<double>(ij, "t", 0.0, "initial"), vec(ij, "x", d, "initial"),
                                          vec(ij, "p", d, "initial")};
  const auto path = nhlab::classical::integrate_eom(ph.kind(), ph.mass, init, need<double>(s, "t_end", w),
                                                    positive_int(s, "steps", w));
  auto os = out.open("path.csv");
  nhlab::io::write_path_csv(os, path);
  return {{"samples", path.size()}, {"line_fit_residual", nhlab::classical::line_fit_residual(path)}};
}

int cmd_simulate(const std::string& config, const std::string& out_dir, const Overrides& o) {
  Json j = nhlab::io::read_json_file(config);
  allow_keys(j, {"kind", "nu", "hbar", "mass", "G", "seed", "simulation"}, "config");
  Physics ph;
  ph.variant = nhlab::io::parse_variant(opt<std::string>(j, "kind", "nh", "config"));
  ph.nu = opt<double>(j, "nu", 1.0, "config");
  ph.hbar = opt<double>(j, "hbar", 1.0, "config");
  ph.mass = opt<double>(j, "mass", 1.0, "config");
  ph.G = opt<double>(j, "G", 1.0, "config");
  ph.seed = opt<std::uint64_t>(j, "seed", 12345, "config");
  if (*o.kind_opt) ph.variant = nhlab::io::parse_variant(o.kind);
  if (*o.nu_opt) ph.nu = o.nu;
  if (*o.seed_opt) ph.seed = o.seed;
  if (ph.variant == Variant::Galilei) ph.nu = 0.0;
  if (!(ph.hbar > 0.0) || !(ph.mass > 0.0) || !(ph.G > 0.0)) throw ConfigError("config: hbar, mass, G must be positive");
  ph.kind();

  Json& s = j["simulation"];
  const std::string type = need<std::string>(s, "type", "simulation");
  if (*o.C_opt) {
    if (type != "orbit" && type != "geodesics") throw ConfigError("--C applies to orbit and geodesics runs");
    s["C"] = o.C;
  }

  Output out(out_dir);
  Json results;
  if (type == "wavepacket")
    results = simulate_wavepacket(s, ph, out);
  else if (type == "orbit")
    results = simulate_orbit(s, ph, out);
  else if (type == "geodesics")
    results = simulate_geodesics(s, ph, out);
  else if (type == "eom")
    results = simulate_eom(s, ph, out);
  else
    throw ConfigError("simulation: unknown type '" + type + "'");

  const SpacetimeKind k = ph.kind();
  j["kind"] = nhlab::to_string(k.variant());
  j["nu"] = k.nu();
  j["seed"] = ph.seed;
  Json summary{{"parameters", j}, {"results", results}, {"files", out.files()}};
  nhlab::io::write_json_file((out.dir() / "summary.json").string(), summary);
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newton-Hooke space-time numerical lab"};
  app.require_subcommand(1);

  std::string suite = "all", config, out;
  Overrides vo, so;
  auto* verify = app.add_subcommand("verify", "run verification suites and print a JSON report");
  verify->add_option("--suite", suite, "suite name or 'all'");
  verify->add_option("--config", config, "JSON file with verify parameters")->check(CLI::ExistingFile);
  verify->add_option("--out", out, "report path (default: stdout)");
  vo.attach(verify, true);

  std::string sim_config, sim_out = ".";
  auto* simulate = app.add_subcommand("simulate", "run a configured simulation and export data files");
  simulate->add_option("--config", sim_config, "JSON simulation config")->required()->check(CLI::ExistingFile);
  simulate->add_option("--out", sim_out, "output directory");
  so.attach(simulate, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kConfig;
  }

  try {
    if (verify->parsed()) return cmd_verify(suite, config, out, vo);
    return cmd_simulate(sim_config, sim_out, so);
  } catch (const nhlab::DomainExit& e) {
    std::cerr << "domain exit at t = " << nhlab::io::format_number(e.time()) << ": " << e.what() << "\n";
    return kDomain;
  } catch (const nhlab::DomainError& e) {
    std::cerr << "domain exit: " << e.what() << "\n";
    return kDomain;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const nhlab::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
}
