#include <algorithm>
#include <cmath>

#include "nhlab/io.hpp"
#include "suites.hpp"

namespace nhlab::verify {

namespace {

using Json = nlohmann::json;
using SuiteFn = void (*)(detail::Context&, detail::Recorder&);

struct SuiteDef {
  std::string name;
  int default_dim;
  SuiteFn fn;
  std::vector<CheckSpec> checks;
};

const std::vector<SuiteDef>& registry() {
  static const std::vector<SuiteDef> defs = {
      {"brackets", 3, detail::brackets_suite,
       {{"bracket", "[X,Y] equals the tabulated right-hand side coefficient-wise", 1e-12},
        {"jacobi", "[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]] = 0", 1e-10}}},
      {"group", 3, detail::group_suite,
       {{"compose_apply", "(g2 o g1)(e) = g2(g1(e))", 1e-10},
        {"inverse", "g^-1(g(e)) = e", 1e-10},
        {"velocity_law", "dx'/dt' = transformed velocity of the world line", 1e-6},
        {"acceleration_law", "d^2x'/dt'^2 = transformed acceleration of the world line", 1e-5},
        {"proper_time", "tau(t2') - tau(t1') = tau(t2) - tau(t1), d tau = dt/sigma(t)", 1e-8},
        {"uniform_motion", "x = x0 + v t maps to x' = x0' + v' t'", 1e-8}}},
      {"classical", 3, detail::classical_suite,
       {{"total_derivative", "S_NH - S_free = [+-m nu^2 t x^2/(2 sigma)] at the ends", 1e-6},
        {"total_derivative_order", "quadrature error ~ h^2 (|observed order - 2|)", 0.1},
        {"translation_shift", "S[x - a] - S[x] = [-+m nu^2 t a.x/sigma +- m nu^2 t a^2/(2 sigma)] at the ends", 1e-6},
        {"translation_shift_order", "quadrature error ~ h^2 (|observed order - 2|)", 0.1},
        {"eom_straight_line", "canonical equations give x = x0 + v t", 1e-6},
        {"eom_order", "RK4 error ~ h^4 (|observed order - 4|)", 0.5},
        {"static_oscillator", "q'' = +-nu^2 q in proper time is a straight line in (t, x)", 1e-10}}},
      {"quantum", 1, detail::quantum_suite,
       {{"ordinary_space_translation", "transform o evolve = evolve o transform, ordinary equation, x -> x - a", 1e-5},
        {"ordinary_time_translation", "transform o evolve = evolve o transform, ordinary equation, t -> t - a^t", 1e-5},
        {"ordinary_boost", "transform o evolve = evolve o transform, ordinary equation, x -> x - u t", 1e-5},
        {"ordinary_rotation", "transform o evolve = evolve o transform, ordinary equation, x -> O x", 1e-5},
        {"extraordinary_space_translation", "transform o evolve = evolve o transform, free equation, x -> x - a", 1e-5},
        {"extraordinary_time_translation", "transform o evolve = evolve o transform, free equation, t -> t - a^t", 1e-5},
        {"extraordinary_boost", "transform o evolve = evolve o transform, free equation, x -> x - u t", 1e-5},
        {"extraordinary_rotation", "transform o evolve = evolve o transform, free equation, x -> O x", 1e-5},
        {"extraordinary_dilatation", "transform o evolve = evolve o transform, free equation, (t, x) -> (l^2 t, l x)", 1e-5},
        {"extraordinary_special_conformal", "transform o evolve = evolve o transform, free equation, (t, x) -> (t, x)/(1 - k t)", 1e-5},
        {"unitarity_free", "int |psi~|^2 conserved by the free flow", 1e-10},
        {"unitarity_harmonic", "int |psi|^2 conserved by the oscillator flow", 1e-10},
        {"continuity_invariant", "d rho/dt + div j = 0 (psi~ samples)", 1e-6},
        {"continuity_ordinary", "d rho/dt + div j = 0 (psi samples)", 1e-6},
        {"rho_invariance", "|psi'(t',x')|^2 = |psi(t,x)|^2 under NH transformations", 1e-10},
        {"rho_jacobian", "|psi~'(x')|^2 |dx'/dx|^d = |psi~(x)|^2 under dilatation and special conformal maps", 1e-10},
        {"norm_relation", "int |psi|^2 = sigma(t)^{d/2} int |psi|^2 sigma^{-d/2}", 1e-10},
        {"ordinary_norm", "int |psi|^2 sigma^{-d/2} conserved by the ordinary flow", 1e-10}}},
      {"duality", 1, detail::duality_suite,
       {{"plane_wave_image", "plane wave -> sech^{d/2}(nu tau) exp(i(p.q sech - (p^2/2m nu - m nu q^2/2) tanh)/hbar), sec/tan for ANH", 1e-8},
        {"ground_state_image", "ground state -> (1 + i nu t)^{-d/2} exp(-m nu x^2/(2 hbar (1 + i nu t)))", 1e-8},
        {"forward_residual", "image of a free solution solves i hbar psi_tau = (-hbar^2 lap/2m -+ m nu^2 q^2/2) psi", 1e-5},
        {"backward_residual", "image of an oscillator solution solves i hbar psi~_t = -hbar^2 lap psi~/2m", 1e-5}}},
      {"geodesics", 3, detail::geodesics_suite,
       {{"straight_line", "geodesics of every C are straight world lines x = x0 + v t", 1e-8},
        {"first_integral", "(dt/dlambda)/(sigma varsigma^C) is constant", 1e-9},
        {"lambda_transform", "dlambda'/dlambda = varsigma(a^t)^C", 1e-9},
        {"curvature_fd", "R^i_ttj = +-(1 -+ C^2) nu^2/sigma^2, R_tt = -d R^i_ttj against finite differences", 1e-6},
        {"flat_closed_form", "C^2 = 1 (NH): all curvature components vanish", 0.0},
        {"linear_chart_affine", "C = 1 (NH): geodesics are affine in (lambda, y)", 1e-9},
        {"linear_metric", "C = 1 (NH): d tau^2 = (1 + 2 nu lambda)^-2 dlambda^2", 1e-10},
        {"galilei_contraction", "nu -> 0 with nu C = gamma: Gamma^t_tt -> 2 gamma", 1e-5}}},
      {"gravity", 3, detail::gravity_suite,
       {{"kepler", "nu -> 0: orbit equals the Kepler ellipse over one period", 1e-6},
        {"kepler_circular", "nu -> 0: circular orbit keeps its radius", 1e-6},
        {"gauss_flux", "flux of Gamma^i_tt through a sphere = 4 pi G M / sigma^{1/2}", 1e-8},
        {"flux_radius_independence", "flux is independent of the sphere radius", 1e-8},
        {"law_residual", "d^2x/dt^2 = -(G M / sigma^{1/2}) (x - X)/|x - X|^3", 1e-6},
        {"covariance", "the law holds for the transformed orbit and source", 1e-6},
        {"rotation_covariance", "rotated residual equals the raw residual", 1e-8},
        {"c_independence", "orbits are identical for every C", 0.0},
        {"divergence", "div Gamma^i_tt = 0 away from the source", 1e-10},
        {"curl", "curl Gamma^i_tt = 0", 1e-8}}},
  };
  return defs;
}

const SuiteDef& find_suite(const std::string& name) {
  for (const auto& s : registry())
    if (s.name == name) return s;
  throw ConfigError("unknown suite '" + name + "'");
}

const CheckSpec* find_check(const SuiteDef& s, const std::string& id) {
  for (const auto& c : s.checks)
    if (c.id == id) return &c;
  return nullptr;
}

// Reason the suite cannot run with this configuration, empty if it can.
std::string inapplicable(const SuiteDef& s, const Config& c) {
  if (s.name == "duality" && c.variant == Variant::Galilei) return "the duality map needs nu > 0";
  if (s.name == "gravity" && c.d && *c.d != 3) return "the gravity suite is fixed to d = 3";
  return {};
}

std::uint64_t suite_seed(std::uint64_t seed, const std::string& name) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a, stable across platforms
  for (unsigned char ch : name) h = (h ^ ch) * 1099511628211ull;
  return seed ^ h;
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

SuiteResult run_one(const SuiteDef& s, const Config& c) {
  SuiteResult out;
  out.suite = s.name;
  out.dim = c.d.value_or(s.default_dim);
  detail::Context ctx{c, c.kind(), out.dim, std::mt19937_64(suite_seed(c.seed, s.name))};
  detail::Recorder rec(out, c);
  s.fn(ctx, rec);
  return out;
}

}  // namespace

SpacetimeKind Config::kind() const {
  try {
    return SpacetimeKind::make(variant, variant == Variant::Galilei ? 0.0 : nu);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

bool Report::all_pass() const {
  for (const auto& s : suites)
    for (const auto& e : s.entries)
      if (!e.pass) return false;
  return true;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& s : registry()) n.push_back(s.name);
    return n;
  }();
  return names;
}

const std::vector<CheckSpec>& registered_checks(const std::string& suite) { return find_suite(suite).checks; }

void validate(const Config& c, const std::string& suite) {
  if (suite != "all") find_suite(suite);
  (void)c.kind();
  if (!std::isfinite(c.C)) throw ConfigError("C must be finite");
  if (c.d && (*c.d < 1 || *c.d > 3)) throw ConfigError("d must be 1, 2 or 3");
  if (!positive(c.hbar) || !positive(c.mass) || !positive(c.G) || !positive(c.M))
    throw ConfigError("hbar, mass, G and M must be positive");
  if (c.samples < 10 || c.samples > 1000000) throw ConfigError("samples must lie in [10, 10^6]");
  for (const auto& [key, tol] : c.tolerances) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) throw ConfigError("tolerance key '" + key + "' is not of the form suite.check");
    if (!find_check(find_suite(key.substr(0, dot)), key.substr(dot + 1)))
      throw ConfigError("tolerance key '" + key + "' names no registered check");
    if (!positive(tol)) throw ConfigError("tolerance '" + key + "' must be positive");
  }
  if (suite != "all") {
    const std::string why = inapplicable(find_suite(suite), c);
    if (!why.empty()) throw ConfigError(suite + ": " + why);
  }
}

Report run(const std::string& suite, const Config& c) {
  validate(c, suite);
  Report r;
  r.config = c;
  for (const auto& s : registry()) {
    if (suite != "all" && s.name != suite) continue;
    const std::string why = inapplicable(s, c);
    if (!why.empty()) {
      r.suites.push_back({s.name, c.d.value_or(s.default_dim), true, why, {}});
      continue;
    }
    r.suites.push_back(run_one(s, c));
  }
  return r;
}

Json to_json(const Config& c) {
  Json tol = Json::object();
  for (const auto& [k, v] : c.tolerances) tol[k] = v;
  return Json{{"kind", to_string(c.variant)},
              {"nu", c.variant == Variant::Galilei ? 0.0 : c.nu},
              {"C", c.C},
              {"d", c.d ? Json(*c.d) : Json(nullptr)},
              {"seed", c.seed},
              {"hbar", c.hbar},
              {"mass", c.mass},
              {"G", c.G},
              {"M", c.M},
              {"samples", c.samples},
              {"tolerances", tol}};
}

Json to_json(const Report& r) {
  Json suites = Json::array();
  for (const auto& s : r.suites) {
    Json entries = Json::array();
    bool pass = true;
    for (const auto& e : s.entries) {
      pass = pass && e.pass;
      entries.push_back(Json{{"suite", e.suite},
                             {"check", e.check},
                             {"anchor", e.anchor},
                             {"deviation", e.deviation},
                             {"tolerance", e.tolerance},
                             {"pass", e.pass}});
    }
    Json js{{"suite", s.suite}, {"d", s.dim}, {"skipped", s.skipped}, {"pass", pass}, {"entries", entries}};
    if (s.skipped) js["note"] = s.note;
    suites.push_back(js);
  }
  return Json{{"parameters", to_json(r.config)}, {"suites", suites}, {"pass", r.all_pass()}};
}

void apply_json(Config& c, const Json& j) {
  if (!j.is_object()) throw ConfigError("verify config must be an object");
  auto num = [&](const std::string& k) {
    if (!j.at(k).is_number()) throw ConfigError("'" + k + "' must be a number");
    return j.at(k).get<double>();
  };
  for (const auto& [key, val] : j.items()) {
    if (key == "kind") {
      if (!val.is_string()) throw ConfigError("'kind' must be a string");
      c.variant = io::parse_variant(val.get<std::string>());
    } else if (key == "nu") {
      c.nu = num(key);
    } else if (key == "C") {
      c.C = num(key);
    } else if (key == "d") {
      if (val.is_null())
        c.d.reset();
      else if (val.is_number_integer())
        c.d = val.get<int>();
      else
        throw ConfigError("'d' must be an integer");
    } else if (key == "seed") {
      if (!val.is_number_unsigned()) throw ConfigError("'seed' must be a non-negative integer");
      c.seed = val.get<std::uint64_t>();
    } else if (key == "hbar") {
      c.hbar = num(key);
    } else if (key == "mass") {
      c.mass = num(key);
    } else if (key == "G") {
      c.G = num(key);
    } else if (key == "M") {
      c.M = num(key);
    } else if (key == "samples") {
      if (!val.is_number_integer()) throw ConfigError("'samples' must be an integer");
      c.samples = val.get<int>();
    } else if (key == "tolerances") {
      if (!val.is_object()) throw ConfigError("'tolerances' must be an object");
      for (const auto& [k, v] : val.items()) {
        if (!v.is_number()) throw ConfigError("tolerance '" + k + "' must be a number");
        c.tolerances[k] = v.get<double>();
      }
    } else {
      throw ConfigError("unknown verify key '" + key + "'");
    }
  }
}

namespace detail {

double tolerance_of(const Config& cfg, const std::string& suite, const std::string& id) {
  const auto it = cfg.tolerances.find(suite + "." + id);
  if (it != cfg.tolerances.end()) return it->second;
  const CheckSpec* spec = find_check(find_suite(suite), id);
  if (!spec) throw Error("verify: unregistered check " + suite + "." + id);
  return spec->tolerance;
}

void Recorder::add(const std::string& id, double deviation) {
  const CheckSpec* spec = find_check(find_suite(out_.suite), id);
  if (!spec) throw Error("verify: unregistered check " + out_.suite + "." + id);
  add(id, deviation, id, spec->anchor);
}

void Recorder::add(const std::string& id, double deviation, const std::string& check, const std::string& anchor) {
  const double tol = tolerance_of(cfg_, out_.suite, id);
  out_.entries.push_back({out_.suite, check, anchor, deviation, tol, std::isfinite(deviation) && deviation <= tol});
}

}  // namespace detail

}  // namespace nhlab::verify
