#include <set>
#include <string>

#include "doctest.h"
#include "nhlab/errors.hpp"
#include "nhlab/verify.hpp"

using namespace nhlab;
using nlohmann::json;

namespace {

verify::Config quick() {
  verify::Config c;
  c.samples = 50;
  return c;
}

}  // namespace

TEST_CASE("every suite registers unique checks with anchors and positive tolerances") {
  for (const auto& s : verify::suite_names()) {
    std::set<std::string> ids;
    for (const auto& c : verify::registered_checks(s)) {
      CHECK(ids.insert(c.id).second);
      CHECK_FALSE(c.anchor.empty());
      CHECK(c.tolerance >= 0.0);
    }
    CHECK_FALSE(ids.empty());
  }
  CHECK_THROWS_AS(verify::registered_checks("nope"), ConfigError);
}

TEST_CASE("validation rejects malformed configs") {
  auto c = quick();
  CHECK_NOTHROW(verify::validate(c, "all"));
  CHECK_THROWS_AS(verify::validate(c, "nope"), ConfigError);
  c.d = 4;
  CHECK_THROWS_AS(verify::validate(c, "group"), ConfigError);
  c = quick();
  c.nu = -1.0;
  CHECK_THROWS_AS(verify::validate(c, "group"), ConfigError);
  c = quick();
  c.tolerances["group.nope"] = 1e-3;
  CHECK_THROWS_AS(verify::validate(c, "group"), ConfigError);
  c = quick();
  c.tolerances["group.inverse"] = 0.0;
  CHECK_THROWS_AS(verify::validate(c, "group"), ConfigError);
  c = quick();
  c.variant = Variant::Galilei;
  CHECK_THROWS_AS(verify::run("duality", c), ConfigError);
  c.d = 2;
  CHECK_THROWS_AS(verify::run("gravity", c), ConfigError);
}

TEST_CASE("JSON config round trip and unknown keys") {
  verify::Config c;
  verify::apply_json(c, json::parse(R"({"kind": "anh", "nu": 0.7, "C": 1.5, "d": 2, "seed": 9,
                                        "tolerances": {"group.inverse": 1e-9}})"));
  CHECK(c.variant == Variant::ANH);
  CHECK(c.nu == 0.7);
  CHECK(c.d == 2);
  CHECK(c.seed == 9u);
  verify::Config back;
  verify::apply_json(back, verify::to_json(c));
  CHECK(verify::to_json(back) == verify::to_json(c));
  CHECK_THROWS_AS(verify::apply_json(c, json::parse(R"({"gamma": 1})")), ConfigError);
  CHECK_THROWS_AS(verify::apply_json(c, json::parse(R"({"nu": "fast"})")), ConfigError);

  const json j = verify::to_json(verify::Config{});
  for (const char* k : {"kind", "nu", "C", "d", "seed", "hbar", "mass", "G", "M", "samples", "tolerances"})
    CHECK(j.contains(k));
  CHECK(j.at("hbar") == 1.0);
}

TEST_CASE("reports are deterministic and seed dependent") {
  auto c = quick();
  const auto a = verify::to_json(verify::run("group", c)).dump();
  const auto b = verify::to_json(verify::run("group", c)).dump();
  CHECK(a == b);
  c.seed += 1;
  CHECK(verify::to_json(verify::run("group", c)).dump() != a);
}

TEST_CASE("a suite gives the same entries alone and inside a multi-suite run") {
  auto c = quick();
  c.variant = Variant::Galilei;
  const auto alone = verify::run("geodesics", c);
  const auto all = verify::run("all", c);
  bool found = false;
  for (const auto& s : all.suites) {
    if (s.suite == "duality") {
      CHECK(s.skipped);
      CHECK_FALSE(s.note.empty());
    }
    if (s.suite != "geodesics") continue;
    found = true;
    REQUIRE(s.entries.size() == alone.suites[0].entries.size());
    for (std::size_t i = 0; i < s.entries.size(); ++i)
      CHECK(s.entries[i].deviation == alone.suites[0].entries[i].deviation);
  }
  CHECK(found);
  CHECK(all.all_pass());
}

TEST_CASE("kinematic suites pass for both curved kinds") {
  for (Variant v : {Variant::NH, Variant::ANH}) {
    auto c = quick();
    c.variant = v;
    c.nu = 0.8;
    for (const char* s : {"brackets", "group", "classical", "geodesics", "gravity"}) {
      const auto r = verify::run(s, c);
      for (const auto& e : r.suites[0].entries) {
        INFO(e.suite << "." << e.check << " = " << e.deviation);
        CHECK(e.pass);
        CHECK_FALSE(e.anchor.empty());
      }
    }
  }
}

TEST_CASE("a tightened tolerance turns an entry red") {
  auto c = quick();
  c.tolerances["group.acceleration_law"] = 1e-300;
  const auto r = verify::run("group", c);
  CHECK_FALSE(r.all_pass());
  int red = 0;
  for (const auto& e : r.suites[0].entries) red += e.pass ? 0 : 1;
  CHECK(red >= 1);
  const json j = verify::to_json(r);
  CHECK(j.at("pass") == false);
}
