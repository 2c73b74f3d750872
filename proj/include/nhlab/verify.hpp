#pragma once

// Verification suites behind `nhlab verify`. Every suite draws its random
// samples from a stream seeded by (seed, suite), so one suite gives the same
// entries whether run alone or as part of "all".

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nhlab/geometry.hpp"

namespace nhlab::verify {

struct Config {
  Variant variant = Variant::NH;
  double nu = 1.0;   // ignored for Galilei
  double C = 0.5;    // anomaly parameter; gamma for the Galilei family
  std::optional<int> d;  // unset: each suite uses its own default
  std::uint64_t seed = 12345;
  double hbar = 1.0;
  double mass = 1.0;
  double G = 1.0;
  double M = 1.0;      // source mass of the gravity suite
  int samples = 1000;  // random points, elements or events per check
  /// Overrides keyed "suite.check"; every key must name a registered check.
  std::map<std::string, double> tolerances;

  SpacetimeKind kind() const;
};

struct Entry {
  std::string suite;
  std::string check;
  std::string anchor;  // the identity being checked
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteResult {
  std::string suite;
  int dim = 0;
  bool skipped = false;
  std::string note;  // reason when skipped
  std::vector<Entry> entries;
};

struct Report {
  Config config;
  std::vector<SuiteResult> suites;
  bool all_pass() const;
};

/// brackets, group, classical, quantum, duality, geodesics, gravity.
const std::vector<std::string>& suite_names();

/// Registered check ids of a suite with their anchors and default tolerances.
struct CheckSpec {
  std::string id;
  std::string anchor;
  double tolerance;
};
const std::vector<CheckSpec>& registered_checks(const std::string& suite);

/// Range and consistency checks; ConfigError on failure.
void validate(const Config& c, const std::string& suite);

/// Runs one suite or "all". Inapplicable suites are skipped under "all" and
/// raise ConfigError when asked for by name. DomainExit propagates.
Report run(const std::string& suite, const Config& c);

/// Deterministic JSON form with every parameter spelled out.
nlohmann::json to_json(const Report& r);
nlohmann::json to_json(const Config& c);

/// Applies keys of a JSON object onto c (kind, nu, C, d, seed, hbar, mass,
/// G, M, samples, tolerances). Unknown keys raise ConfigError.
void apply_json(Config& c, const nlohmann::json& j);

}  // namespace nhlab::verify
