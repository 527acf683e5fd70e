#pragma once

#include <optional>
#include <vector>

#include "minkgeo/linalg.hpp"
#include "minkgeo/norm.hpp"

namespace minkgeo {

// {x : (x - center)^T shape (x - center) <= 1} with shape SPD.
struct Ellipsoid {
  Vec center;
  Mat shape{0, 0};
};

struct MveeResult {
  Ellipsoid ellipsoid;
  int iterations = 0;
  double eps = 0.0;
  double gap = 0.0;
};

// (1+eps)-approximate minimum-volume enclosing ellipsoid by barycentric
// coordinate ascent with away steps. Points must affinely span the space.
MveeResult mvee(const std::vector<Vec>& points, double eps = 1e-7);

// Symmetric square root A of the shape matrix: A maps the centered ellipsoid
// onto the Euclidean unit ball and satisfies A^T A = shape.
Mat normalizer(const Ellipsoid& ell);

struct LinearMapCandidate {
  Mat matrix{0, 0};
  Vec translation;  // empty means zero; cancels in difference vectors
};

struct ConjugationReport {
  Mat f{0, 0};
  double orth_residual = 0.0;      // |f^T f - I|_inf
  double isometry_residual = 0.0;  // worst sampled |F(g dx) - F(dx)|
  Ellipsoid loewner;               // circumscribed ellipsoid of the ball cloud
  int mvee_iterations = 0;
};

// Conjugates a candidate linear isometry of the norm into the orthogonal
// group through the normalizer of the Loewner ellipsoid of the unit ball.
ConjugationReport conjugate_to_orthogonal(const WeakNorm& norm, const LinearMapCandidate& g,
                                          const SamplingPlan& plan);

struct EuclideanFit {
  std::optional<Mat> shape;  // set iff the norm is a quadratic gauge
  double residual = 0.0;     // worst relative misfit on fresh directions
  Vec worst_direction;
};

// Least-squares quadratic fit of F^2 over sampled directions; accepts iff the
// fit is SPD and reproduces fresh samples to 1e-6 relative.
EuclideanFit is_euclidean(const WeakNorm& norm, const SamplingPlan& plan);

// Deterministic cloud on the unit sphere of the norm: uniform angles in 2D,
// icosphere vertices in 3D, seeded directions in higher dimension.
// resolution 0 picks the default (720 / 2562 / 4096).
std::vector<Vec> boundary_cloud(const WeakNorm& norm, int resolution = 0);

}  // namespace minkgeo
