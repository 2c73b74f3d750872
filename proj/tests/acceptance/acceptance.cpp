// Acceptance run: one PASS/FAIL line per criterion. Each criterion runs the
// relevant verification suites for both curved kinds and judges the named
// checks against the tolerances pinned below, independent of the suites'
// own defaults. Exit status is 0 iff every criterion passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "nhlab/errors.hpp"
#include "nhlab/verify.hpp"

using namespace nhlab;

namespace {

struct Outcome {
  std::vector<verify::SuiteResult> runs;
  double seconds = 0.0;
};

Outcome run(const std::string& suite, std::initializer_list<Variant> kinds,
            const std::function<void(verify::Config&)>& tweak = {}) {
  Outcome o;
  for (Variant v : kinds) {
    verify::Config c;
    c.variant = v;
    if (tweak) tweak(c);
    const auto t0 = std::chrono::steady_clock::now();
    auto rep = verify::run(suite, c);
    o.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (auto& s : rep.suites) o.runs.push_back(std::move(s));
  }
  return o;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

// Judges entries of one criterion and collects a one-line summary.
class Judge {
 public:
  // Entry `id` must lie within tol in each run (in some run if any_run).
  void require(const Outcome& o, const std::string& id, double tol, bool any_run = false) {
    match(o, id, tol, any_run, false);
  }
  // Every entry whose check starts with `prefix`.
  void require_prefix(const Outcome& o, const std::string& prefix, double tol) { match(o, prefix, tol, false, true); }

  // Deviation of `check` against `factor` times the deviation of `reference`, per run.
  void relative(const Outcome& o, const std::string& check, const std::string& reference, double factor) {
    double worst = 0.0;
    for (const auto& s : o.runs) {
      const auto* a = find(s, check);
      const auto* b = find(s, reference);
      if (!a || !b) {
        fail(s.suite + ": missing " + check + " or " + reference);
        continue;
      }
      const double ratio = a->deviation / b->deviation;
      worst = std::max(worst, ratio);
      if (!(ratio <= factor)) fail(check + "/" + reference + " = " + fmt(ratio) + " > " + fmt(factor));
    }
    note(check + "/" + reference + " " + fmt(worst) + "/" + fmt(factor));
  }

  void runtime(double seconds, double limit) {
    if (!(seconds < limit)) fail("runtime " + fmt(seconds) + " s >= " + fmt(limit) + " s");
    note("runtime " + fmt(seconds) + "s/<" + fmt(limit) + "s");
  }

  void fail(const std::string& why) { failures_.push_back(why); }
  bool pass() const { return failures_.empty(); }
  std::string summary() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < notes_.size(); ++i) os << (i ? "; " : "") << notes_[i];
    for (const auto& f : failures_) os << "\n      ! " << f;
    return os.str();
  }

 private:
  void match(const Outcome& o, const std::string& prefix, double tol, bool any_run, bool is_prefix) {
    double worst = 0.0;
    int seen_runs = 0;
    for (const auto& s : o.runs) {
      int seen = 0;
      for (const auto& e : s.entries) {
        if (is_prefix ? e.check.rfind(prefix, 0) != 0 : e.check != prefix) continue;
        ++seen;
        worst = std::max(worst, e.deviation);
        if (!(e.deviation <= tol)) fail(s.suite + "." + e.check + " = " + fmt(e.deviation) + " > " + fmt(tol));
      }
      if (seen > 0) ++seen_runs;
      else if (!any_run) fail(s.suite + ": no '" + prefix + "' entries");
    }
    if (seen_runs == 0) fail("no '" + prefix + "' entries");
    note(prefix + " " + fmt(worst) + "/" + fmt(tol));
  }

  static const verify::Entry* find(const verify::SuiteResult& s, const std::string& id) {
    for (const auto& e : s.entries)
      if (e.check == id) return &e;
    return nullptr;
  }
  void note(const std::string& n) { notes_.push_back(n); }
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

struct Criterion {
  int id;
  const char* title;
  std::function<void(Judge&)> body;
};

constexpr auto kBoth = {Variant::NH, Variant::ANH};

}  // namespace

int main() {
  // the quantum suite feeds two criteria; run it once
  Outcome quantum;
  bool quantum_done = false;
  auto quantum_runs = [&]() -> const Outcome& {
    if (!quantum_done) {
      quantum = run("quantum", kBoth, [](verify::Config& c) { c.d = 1; });
      quantum_done = true;
    }
    return quantum;
  };

  const std::vector<Criterion> criteria{
      {1, "bracket tables", [](Judge& j) {
         const auto o = run("brackets", kBoth, [](verify::Config& c) { c.samples = 1000; });
         for (const char* t : {"nh_algebra:", "extended_nh:", "ladder:", "so12:"}) j.require_prefix(o, t, 1e-12);
         j.runtime(o.seconds, 5.0);
       }},
      {2, "group closure and kinematics", [](Judge& j) {
         const auto o = run("group", kBoth, [](verify::Config& c) { c.samples = 1000; });
         j.require(o, "compose_apply", 1e-10);
         j.require(o, "acceleration_law", 1e-5);
         j.require(o, "proper_time", 1e-8);
         j.runtime(o.seconds, 10.0);
       }},
      {3, "classical identities", [](Judge& j) {
         const auto o = run("classical", kBoth);
         j.require(o, "total_derivative", 1e-6);
         j.require(o, "translation_shift", 1e-6);
         // h^2 confirmed by one refinement: |observed order - 2| <= 0.1
         j.require(o, "total_derivative_order", 0.1);
         j.require(o, "translation_shift_order", 0.1);
         j.require(o, "eom_straight_line", 1e-6);
         j.require(o, "eom_order", 0.5);
         j.runtime(o.seconds, 10.0);
       }},
      {4, "quantum invariance (d = 1, N = 1024)", [&](Judge& j) {
         const auto& o = quantum_runs();
         for (const char* s : {"ordinary_space_translation", "ordinary_time_translation", "ordinary_boost",
                               "ordinary_rotation", "extraordinary_space_translation",
                               "extraordinary_time_translation", "extraordinary_boost", "extraordinary_rotation",
                               "extraordinary_dilatation", "extraordinary_special_conformal"})
           j.require(o, s, 1e-5);
         j.runtime(o.seconds, 60.0);
       }},
      {5, "duality", [](Judge& j) {
         const auto o = run("duality", kBoth, [](verify::Config& c) { c.d = 1; });
         j.require(o, "plane_wave_image", 1e-8);
         j.require(o, "ground_state_image", 1e-8, true);  // ANH only
         j.require(o, "forward_residual", 1e-5);
         j.require(o, "backward_residual", 1e-5);
       }},
      {6, "probability structure", [&](Judge& j) {
         const auto& o = quantum_runs();
         j.require(o, "unitarity_free", 1e-10);
         j.require(o, "unitarity_harmonic", 1e-10);
         j.require_prefix(o, "continuity_", 1e-6);
         j.require(o, "rho_invariance", 1e-10);
         j.require(o, "rho_jacobian", 1e-10);
         j.require(o, "norm_relation", 1e-10);
       }},
      {7, "anomalous geometry", [](Judge& j) {
         const auto o = run("geodesics", kBoth);
         j.require(o, "straight_line", 1e-8);
         j.require(o, "lambda_transform", 1e-9);
         j.require(o, "curvature_fd", 1e-6);
         j.require(o, "flat_closed_form", 0.0, true);  // NH only
         j.require(o, "linear_chart_affine", 1e-9, true);
         j.runtime(o.seconds, 20.0);
       }},
      {8, "gravity", [](Judge& j) {
         const auto o = run("gravity", kBoth);
         j.require(o, "kepler", 1e-6);
         j.require(o, "gauss_flux", 1e-8);
         j.require(o, "flux_radius_independence", 1e-8);
         j.require(o, "covariance", 1e-6);
         j.relative(o, "covariance", "law_residual", 10.0);
       }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Judge j;
    try {
      c.body(j);
    } catch (const std::exception& e) {
      j.fail(std::string("exception: ") + e.what());
    }
    failed += j.pass() ? 0 : 1;
    std::printf("%s criterion %d: %s | %s\n", j.pass() ? "PASS" : "FAIL", c.id, c.title, j.summary().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
