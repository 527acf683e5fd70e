#pragma once

#include "minkgeo/linalg.hpp"

namespace minkgeo::lp {

enum class Status { optimal, infeasible, unbounded, iteration_limit };

struct Result {
  Status status = Status::optimal;
  double objective = 0.0;
  Vec x;
  int pivots = 0;
};

// min c.x subject to A x = b, x >= 0. Dense two-phase simplex with Bland's
// lowest-index anti-cycling rule; pivot_cap bounds the total pivot count over
// both phases (hitting it reports iteration_limit, which callers treat as a
// numerically degenerate input).
Result solve(const Mat& a, const Vec& b, const Vec& c, int pivot_cap);

}  // namespace minkgeo::lp
