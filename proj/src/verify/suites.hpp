#pragma once

#include <cmath>
#include <random>
#include <string>

#include <Eigen/QR>

#include "nhlab/group.hpp"
#include "nhlab/verify.hpp"

namespace nhlab::verify::detail {

using V = Vec<double>;
using M = Mat<double>;

struct Context {
  const Config& cfg;
  SpacetimeKind kind;
  int d;
  std::mt19937_64 rng;
  /// Time scale of the sampled windows: 1/nu for nu > 1, else 1.
  double T() const { return 1.0 / std::max(kind.nu(), 1.0); }

  double uniform(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }
  V vec(int n, double scale) {
    return V::NullaryExpr(n, [&] { return scale * uniform(); });
  }
  M rotation(int n) {
    const M a = M::NullaryExpr(n, n, [&] { return uniform(); });
    M q = Eigen::HouseholderQR<M>(a).householderQ();
    if (q.determinant() < 0) q.col(0) *= -1.0;
    return q;
  }
  NHTransform element(int n, double time_scale) {
    const double at = time_scale * T() * uniform();
    return {rotation(n), at, vec(n, 1.0), vec(n, 1.0)};
  }
};

/// Collects entries in call order and resolves tolerances.
class Recorder {
 public:
  Recorder(SuiteResult& out, const Config& cfg) : out_(out), cfg_(cfg) {}
  /// A registered check.
  void add(const std::string& id, double deviation);
  /// A dynamic entry sharing the tolerance of registered check `id`.
  void add(const std::string& id, double deviation, const std::string& check, const std::string& anchor);

 private:
  SuiteResult& out_;
  const Config& cfg_;
};

double tolerance_of(const Config& cfg, const std::string& suite, const std::string& id);

void brackets_suite(Context& c, Recorder& r);
void group_suite(Context& c, Recorder& r);
void classical_suite(Context& c, Recorder& r);
void geodesics_suite(Context& c, Recorder& r);
void gravity_suite(Context& c, Recorder& r);
void quantum_suite(Context& c, Recorder& r);
void duality_suite(Context& c, Recorder& r);

}  // namespace nhlab::verify::detail
