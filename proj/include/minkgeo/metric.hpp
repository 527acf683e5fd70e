#pragma once

#include <functional>
#include <string>

#include "minkgeo/norm.hpp"

namespace minkgeo {

// Two-point distance oracle with values in [0, +inf]. domain == nullptr means
// all of R^n; otherwise points live in the interior of the given body and
// samplers draw by rejection.
struct MetricOracle {
  int dim = 0;
  std::string name;
  std::function<double(const Vec&, const Vec&)> eval;
  BodyPtr domain;
  double domain_radius = 0.0;  // enclosing-box halfwidth for rejection sampling

  double operator()(const Vec& x, const Vec& y) const { return eval(x, y); }
};

// Euclidean radius of a ball around the origin covering the body, estimated
// from a direction sweep. Used to size rejection boxes.
double enclosing_radius(const ConvexBody& body);

// delta(x, y) = F(y - x) on all of R^n
MetricOracle metric_from_norm(const WeakNorm& norm);

// Catalog of distances that look plausible but break one Minkowski axiom each:
//   capped_norm      max(|y-x|_2, 1)
//   power            |y-x|_2^alpha, alpha in (0, 1]
//   exp_coordinates  max_j |exp(y_j) - exp(x_j)|
MetricOracle pathological(const std::string& name, int dim, double alpha = 0.5);

// Interior point of the oracle's domain for sample index i; pure in
// (seed, index, point_slot), so thread-count independent.
Vec sample_domain_point(const MetricOracle& oracle, const SamplingPlan& plan, std::uint64_t index,
                        std::uint64_t point_slot);

}  // namespace minkgeo
