#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "minkgeo/body.hpp"

namespace minkgeo {

// Positively homogeneous subadditive evaluator with values in [0, +inf].
// Carries its source so downstream layers can take analytic shortcuts when the
// representation permits.
class WeakNorm {
 public:
  static WeakNorm from_body(ConvexBody body);
  static WeakNorm linear_form(Vec phi);  // x -> max(0, phi.x)
  static WeakNorm custom(int dim, std::function<double(const Vec&)> fn, std::string label = "custom");

  double operator()(const Vec& x) const;
  int dim() const;
  const ConvexBody* body() const;  // null unless body-backed
  const Vec* form() const;         // null unless linear-form
  const std::string& label() const;

 private:
  struct Impl;
  explicit WeakNorm(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

struct SamplingPlan {
  std::uint64_t seed = 0;
  int count = 1000;
  int threads = 1;
  double box_halfwidth = 5.0;  // sampling domain for translation-invariant oracles
  double eps_num = kEpsNum;
};

struct NormClassification {
  bool finite = false;
  bool separating = false;
  bool weakly_separating = false;
  bool reversible = false;
  double quasi_constant = kInf;  // least C with F(-x) <= C F(x); may be +inf
  bool analytic = false;         // true when no flag needed sampling
  std::uint64_t seed = 0;
  int samples = 0;
};

// Refuses plans with fewer than 2*dim samples.
NormClassification classify_norm(const WeakNorm& norm, const SamplingPlan& plan);

// dir / F(dir) when 0 < F(dir) < inf, otherwise empty.
std::optional<Vec> indicatrix_point(const WeakNorm& norm, const Vec& direction);

// (mu, M) with mu*|x| <= F(x) <= M*|x| estimated on the Euclidean sphere;
// requires a finite separating norm. In 2d the sweep is a uniform angular
// grid, so the constants are sharp to sub-1e-6; mu carries a matching safety
// deflation so the lower bound holds on fresh samples.
std::pair<double, double> euclidean_sandwich(const WeakNorm& norm, const SamplingPlan& plan);

// Boundary polyline of the unit ball through indicatrix points over a uniform
// angular grid (2d) or a Fibonacci sphere (3d). Directions with empty
// indicatrix are skipped.
std::vector<Vec> reconstruct_ball(const WeakNorm& norm, int resolution);

}  // namespace minkgeo
