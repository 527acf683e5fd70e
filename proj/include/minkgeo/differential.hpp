#pragma once

#include <optional>
#include <string>
#include <utility>

#include "minkgeo/body.hpp"
#include "minkgeo/linalg.hpp"
#include "minkgeo/norm.hpp"

namespace minkgeo {

struct TensorAtPoint {
  Vec base;
  Mat matrix{0, 0};
  double min_eigenvalue = 0.0;
  std::string method;  // "analytic" or "finite-difference"
  double step = 0.0;
  bool nonsmooth_warning = false;
};

// Componentwise central differences of the norm. h <= 0 picks the default
// step 1e-5 * (1 + |y|); requires |y| > 10h so the stencil stays away from 0.
Vec fd_gradient(const WeakNorm& norm, const Vec& y, double h = 0.0);

// Half the Hessian of the squared norm at y. Quadratic gauges (ellipsoids,
// p=2 balls, their invertible images) short-circuit to the exact matrix;
// everything else uses second differences at step 1e-3 * (1 + |y|) and flags
// points where one-sided first differences disagree.
TensorAtPoint fundamental_tensor(const WeakNorm& norm, const Vec& y, double h = 0.0);

// y . grad F(y) - F(y); zero for positively 1-homogeneous F.
double euler_residual(const WeakNorm& norm, const Vec& y);

// sqrt(y^T g_y y); contracts to F(y) wherever the tensor is trustworthy.
double recover_norm(const WeakNorm& norm, const Vec& y);

// Max-entry difference between the tensors at y and lambda*y; the tensor of a
// gauge is 0-homogeneous, so this measures finite-difference noise only.
double homothety_invariance(const WeakNorm& norm, const Vec& y, double lambda);

enum class ConvexityKind {
  not_strictly_convex,
  strictly_not_strongly,
  strongly_convex,
  inconclusive,
};

struct ConvexityClass {
  ConvexityKind kind = ConvexityKind::inconclusive;
  // Boundary segment endpoints (unit-gauge points whose midpoint also has
  // gauge 1) when strictness fails.
  std::optional<std::pair<Vec, Vec>> segment;
  // Base point where the tensor degenerates when strength fails.
  std::optional<Vec> weak_direction;
  double min_eigenvalue = 0.0;
  std::string detail;
};

// Strict/strong convexity of the unit ball. Polytopes and lp balls are
// decided structurally; other bodies by a sampled boundary-segment search
// plus a tensor eigenvalue sweep. Refuses unbounded bodies.
ConvexityClass classify_convexity(const ConvexBody& body, const SamplingPlan& plan);

}  // namespace minkgeo
