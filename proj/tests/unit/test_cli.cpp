#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "doctest.h"
#include "nhlab/io.hpp"

namespace fs = std::filesystem;
using nhlab::io::Json;

namespace {

const fs::path kWork = fs::temp_directory_path() / "nhlab_test_cli";

int run(const std::string& args) {
  const std::string cmd = std::string(NHLAB_CLI) + " " + args + " > " + (kWork / "stdout.txt").string() +
                          " 2> " + (kWork / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path write(const std::string& name, const std::string& text) {
  fs::create_directories(kWork);
  const fs::path p = kWork / name;
  std::ofstream(p) << text;
  return p;
}

std::vector<std::vector<double>> csv_rows(const fs::path& p) {
  std::vector<std::vector<double>> rows;
  std::ifstream f(p);
  std::string line;
  std::getline(f, line);  // header
  while (std::getline(f, line)) {
    std::vector<double> r;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) r.push_back(std::stod(cell));
    rows.push_back(r);
  }
  return rows;
}

struct Fresh {
  Fresh() {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
  }
};

}  // namespace

TEST_CASE_FIXTURE(Fresh, "verify writes byte-identical reports for a fixed seed") {
  const auto a = (kWork / "a.json").string(), b = (kWork / "b.json").string();
  REQUIRE(run("verify --suite brackets --kind anh --out " + a) == 0);
  REQUIRE(run("verify --suite brackets --kind anh --out " + b) == 0);
  CHECK(slurp(a) == slurp(b));
  const Json j = Json::parse(slurp(a));
  CHECK(j.at("pass") == true);
  CHECK(j.at("parameters").at("hbar") == 1.0);
  CHECK(j.at("parameters").at("kind") == "anh");
  for (const auto& e : j.at("suites")[0].at("entries")) CHECK_FALSE(e.at("anchor").get<std::string>().empty());

  REQUIRE(run("verify --suite group --seed 7 --out " + a) == 0);
  REQUIRE(run("verify --suite group --seed 8 --out " + b) == 0);
  CHECK(slurp(a) != slurp(b));
}

TEST_CASE_FIXTURE(Fresh, "verify examples from the command line") {
  CHECK(run("verify --suite geodesics --C 1.7") == 0);
  CHECK(run("verify --suite duality --d 1") == 0);
  const Json j = Json::parse(slurp(kWork / "stdout.txt"));
  CHECK(j.at("suites")[0].at("d") == 1);
}

TEST_CASE_FIXTURE(Fresh, "exit codes") {
  CHECK(run("verify --suite nope") == 2);
  CHECK(run("verify --kind foo") == 2);
  CHECK(run("verify --suite group --nu -1") == 2);
  CHECK(run("verify --suite duality --kind galilei") == 2);
  CHECK(run("") == 2);
  const auto cfg = write("tight.json", R"({"tolerances": {"group.acceleration_law": 1e-300}})");
  CHECK(run("verify --suite group --config " + cfg.string()) == 1);
  CHECK(slurp(kWork / "stderr.txt").find("FAIL group.acceleration_law") != std::string::npos);
  const auto bad = write("bad.json", R"({"gamma": 1})");
  CHECK(run("verify --suite group --config " + bad.string()) == 2);

  const auto orbit = write("exit.json", R"({"kind": "nh", "nu": 1.0, "simulation": {"type": "orbit",
      "initial": {"x": [1, 0, 0], "v": [0, 1, 0]}, "t_end": 2.0, "steps": 400}})");
  CHECK(run("simulate --config " + orbit.string() + " --out " + (kWork / "o").string()) == 3);
  const std::string err = slurp(kWork / "stderr.txt");
  CHECK(err.find("domain exit at t = 0.98") != std::string::npos);
}

TEST_CASE_FIXTURE(Fresh, "nu = 0 orbit reproduces the Kepler ellipse") {
  // periapsis 1 with speed 1.2: p = 1.44, e = 0.44, a = 1/(2 - 1.44)
  const double a = 1.0 / (2.0 - 1.44), period = 2 * M_PI * std::pow(a, 1.5);
  const auto cfg = write("kepler.json", R"({"kind": "nh", "nu": 0.0, "simulation": {"type": "orbit",
      "initial": {"x": [1, 0, 0], "v": [0, 1.2, 0]}, "t_end": )" +
                                              nhlab::io::format_number(period) + R"(, "steps": 20000}})");
  const auto out = kWork / "kepler";
  REQUIRE(run("simulate --config " + cfg.string() + " --out " + out.string()) == 0);
  const auto rows = csv_rows(out / "orbit.csv");
  REQUIRE(rows.size() == 20001);
  double ellipse = 0.0;
  for (const auto& r : rows) {
    const double rad = std::hypot(r[1], r[2]);
    ellipse = std::max(ellipse, std::abs(rad * (1 + 0.44 * r[1] / rad) - 1.44));
  }
  CHECK(ellipse < 1e-6);
  CHECK(std::abs(rows.back()[1] - 1.0) < 1e-6);
  CHECK(std::abs(rows.back()[2]) < 1e-6);
  const Json s = Json::parse(slurp(out / "summary.json"));
  CHECK(s.at("parameters").at("kind") == "galilei");
  CHECK(s.at("parameters").at("G") == 1.0);
}

TEST_CASE_FIXTURE(Fresh, "geodesic sweep writes one straight line per C") {
  const auto cfg = write("sweep.json", R"({"kind": "nh", "nu": 1.0, "simulation": {"type": "geodesics",
      "C": [-1, 0, 1, 2], "initial": {"t": -0.5, "x": [0.2, 0, -0.1], "dx_dlambda": [0.5, 0.3, 0]},
      "t_end": 0.8, "steps": 20000}})");
  const auto out = kWork / "sweep";
  REQUIRE(run("simulate --config " + cfg.string() + " --out " + out.string()) == 0);
  const Json s = Json::parse(slurp(out / "summary.json"));
  REQUIRE(s.at("results").at("geodesics").size() == 4);
  for (const auto& g : s.at("results").at("geodesics")) {
    CHECK(g.at("straight_line_residual").get<double>() < 1e-8);
    const auto rows = csv_rows(out / g.at("file").get<std::string>());
    REQUIRE(rows.size() == 20001);
    CHECK(std::abs(rows.back()[1] - 0.8) < 1e-8);
  }
  CHECK(s.at("parameters").at("simulation").at("initial").at("dt_dlambda") == 1.0);
}

TEST_CASE_FIXTURE(Fresh, "Gaussian under the ordinary equation exports density snapshots") {
  const auto cfg = write("gauss.json", R"({"kind": "nh", "nu": 1.0, "simulation": {"type": "wavepacket",
      "equation": "ordinary", "grid": {"d": 1, "N": 256, "L": 30},
      "packet": {"center": [-1], "momentum": [1]}, "snapshots": [0.3, 0.6], "steps": 30,
      "formats": ["csv", "json", "binary"]}})");
  const auto out = kWork / "gauss";
  REQUIRE(run("simulate --config " + cfg.string() + " --out " + out.string()) == 0);
  const Json s = Json::parse(slurp(out / "summary.json"));
  CHECK(s.at("files").size() == 9);
  const auto snaps = s.at("results").at("snapshots");
  REQUIRE(snaps.size() == 3);
  CHECK(snaps[2].at("time") == 0.6);

  const auto rows = csv_rows(out / "snapshot_2.csv");
  REQUIRE(rows.size() == 256);
  REQUIRE(rows[0].size() == 4);  // x, rho, rho~, j
  double mass = 0.0;
  for (const auto& r : rows) mass += r[1] * 30.0 / 256;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));

  std::ifstream bin(out / "snapshot_2.bin", std::ios::binary);
  const auto from_bin = nhlab::io::read_grid_state_binary(bin);
  const auto from_json = nhlab::io::grid_state_from_json(Json::parse(slurp(out / "snapshot_2.json")));
  CHECK(from_bin.time == 0.6);
  CHECK((from_bin.values - from_json.values).cwiseAbs().maxCoeff() == 0.0);

  // reruns are byte-identical
  const auto again = kWork / "gauss2";
  REQUIRE(run("simulate --config " + cfg.string() + " --out " + again.string()) == 0);
  CHECK(slurp(out / "summary.json") == slurp(again / "summary.json"));
  CHECK(slurp(out / "snapshot_2.bin") == slurp(again / "snapshot_2.bin"));
}

TEST_CASE_FIXTURE(Fresh, "simulate rejects malformed configs") {
  const auto out = (kWork / "x").string();
  CHECK(run("simulate --config " + write("t.json", R"({"simulation": {"type": "warp"}})").string() + " --out " + out) == 2);
  CHECK(run("simulate --config " + write("k.json", R"({"extra": 1, "simulation": {"type": "eom"}})").string() +
            " --out " + out) == 2);
  CHECK(run("simulate --config " +
            write("h.json", R"({"simulation": {"type": "wavepacket", "equation": "harmonic",
                "grid": {"d": 1, "N": 64, "L": 20}, "snapshots": [0.1], "formats": ["csv"]}})").string() +
            " --out " + out) == 2);
  CHECK(run("simulate --config " +
            write("g.json", R"({"simulation": {"type": "wavepacket", "grid": {"d": 1, "N": 100, "L": 20},
                "snapshots": [0.1]}})").string() + " --out " + out) == 2);
  CHECK(run("simulate --config " + (kWork / "missing.json").string()) == 2);
}

TEST_CASE_FIXTURE(Fresh, "eom run stays on a straight line") {
  const auto cfg = write("eom.json", R"({"kind": "anh", "nu": 0.8, "simulation": {"type": "eom",
      "initial": {"x": [0.5, -0.2], "p": [0.3, 0.4]}, "t_end": 1.5, "steps": 400}})");
  REQUIRE(run("simulate --config " + cfg.string() + " --out " + (kWork / "eom").string()) == 0);
  const Json s = Json::parse(slurp(kWork / "eom" / "summary.json"));
  CHECK(s.at("results").at("line_fit_residual").get<double>() < 1e-8);
  CHECK(csv_rows(kWork / "eom" / "path.csv").size() == 401);
}
