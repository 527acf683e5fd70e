#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "minkgeo/metric.hpp"
#include "minkgeo/norm.hpp"

namespace minkgeo {

enum class Verdict { pass, fail, inconclusive };

// Concrete configuration that reproduces a reported failure: the points fed to
// the oracle, the distances that came back, and a short tag saying which
// inequality broke.
struct Witness {
  std::vector<Vec> points;
  std::vector<double> values;
  std::string note;
};

struct PropertyReport {
  Verdict verdict = Verdict::pass;
  std::optional<Witness> witness;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  double max_violation = 0.0;
  // Largest two-sided ratio seen by the reversibility checker; unset elsewhere.
  std::optional<double> quasi_constant;
  // Strict-inequality sub-result attached by the projectivity checker.
  std::shared_ptr<PropertyReport> strict;
};

// Zero self-distance plus the triangle inequality on sampled triples.
PropertyReport check_weak_axioms(const MetricOracle& oracle, const SamplingPlan& plan);

// Additivity along sampled segments; the strict sub-report probes whether
// points off the segment are ever additive too.
PropertyReport check_projective(const MetricOracle& oracle, const SamplingPlan& plan);

// Existence of metric midpoints: both halves of a sampled pair must measure
// half the whole.
PropertyReport check_midpoint(const MetricOracle& oracle, const SamplingPlan& plan);

// Exhaustive additivity over dyadic parameters on the line through p and q,
// including parameters outside [0, 1]. depth caps the denominator at 2^depth.
PropertyReport check_dyadic(const MetricOracle& oracle, const Vec& p, const Vec& q,
                            int depth, const SamplingPlan& plan);

PropertyReport check_translation_invariance(const MetricOracle& oracle,
                                            const SamplingPlan& plan);

// Symmetry check; on failure quasi_constant reports the worst ratio between
// the two orientations of a sampled pair.
PropertyReport check_reversibility(const MetricOracle& oracle, const SamplingPlan& plan);

struct MinkowskiDecision {
  bool minkowski = false;
  std::string verdict;
  std::optional<WeakNorm> reconstructed;
  PropertyReport midpoint;
  PropertyReport line_continuity;
  PropertyReport reconstruction;
};

// Sampled test for "distance of a translation-invariant projective metric":
// midpoint existence, continuity along segments, and agreement with the norm
// read off at the origin. All three stages always run, so a failing oracle
// still yields the most informative witness.
MinkowskiDecision decide_minkowski(const MetricOracle& oracle, const SamplingPlan& plan);

}  // namespace minkgeo
