#include "doctest.h"

#include <cmath>
#include <vector>

#include "minkgeo/body.hpp"
#include "minkgeo/linalg.hpp"
#include "minkgeo/lp.hpp"
#include "minkgeo/rng.hpp"

using namespace minkgeo;

namespace {

Mat make(int r, int c, std::initializer_list<double> vals) {
  Mat m(r, c);
  int k = 0;
  for (double v : vals) m.a[k++] = v;
  return m;
}

// Exhaustive oracle for min c.x, Ax = b, x >= 0 on bounded feasible sets:
// walk every basis, solve the square system, keep the best feasible vertex.
// Any optimum of a bounded feasible LP sits at one of them.
double enumerate_optimum(const Mat& a, const Vec& b, const Vec& c, bool& feasible) {
  int m = a.rows, n = a.cols;
  feasible = false;
  double best = kInf;
  std::vector<int> pick(m);
  auto run = [&](auto&& self, int start, int depth) -> void {
    if (depth == m) {
      Mat basis(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) basis(i, j) = a(i, pick[j]);
      LuFactors f = lu_factor(basis);
      if (f.singular) return;
      Vec xb = lu_solve(f, b);
      for (double v : xb)
        if (v < -1e-9) return;
      double obj = 0.0;
      for (int j = 0; j < m; ++j) obj += c[pick[j]] * xb[j];
      feasible = true;
      best = std::min(best, obj);
      return;
    }
    for (int j = start; j < n; ++j) {
      pick[depth] = j;
      self(self, j + 1, depth + 1);
    }
  };
  run(run, 0, 0);
  return best;
}

}  // namespace

TEST_CASE("simplex solves a textbook program") {
  // max x1 + x2 s.t. x1 + 2 x2 <= 4, 3 x1 + 2 x2 <= 6 with slacks appended;
  // optimum at the constraint intersection (1, 1.5), objective 2.5.
  Mat a = make(2, 4, {1, 2, 1, 0, 3, 2, 0, 1});
  Vec b = {4, 6};
  Vec c = {-1, -1, 0, 0};
  lp::Result r = lp::solve(a, b, c, 1000);
  REQUIRE(r.status == lp::Status::optimal);
  CHECK(r.objective == doctest::Approx(-2.5).epsilon(1e-12));
  CHECK(r.x[0] == doctest::Approx(1.0));
  CHECK(r.x[1] == doctest::Approx(1.5));
}

TEST_CASE("simplex flags infeasible and unbounded programs") {
  // x1 + x2 = 1 and x1 + x2 = 2 cannot both hold.
  Mat a1 = make(2, 2, {1, 1, 1, 1});
  lp::Result r1 = lp::solve(a1, {1, 2}, {1, 1}, 1000);
  CHECK(r1.status == lp::Status::infeasible);

  // min -x1 with x1 - x2 = 0: x1 = x2 = t grows without bound.
  Mat a2 = make(1, 2, {1, -1});
  lp::Result r2 = lp::solve(a2, {0}, {-1, 0}, 1000);
  CHECK(r2.status == lp::Status::unbounded);
}

TEST_CASE("simplex handles a negative right-hand side") {
  // -x1 = -2 is just x1 = 2 after row normalization.
  Mat a = make(1, 2, {-1, 1});
  lp::Result r = lp::solve(a, {-2}, {1, 0}, 1000);
  REQUIRE(r.status == lp::Status::optimal);
  CHECK(r.objective == doctest::Approx(2.0));
}

TEST_CASE("simplex matches basis enumeration on seeded bounded programs") {
  // Feasibility is forced by construction (b = A x0, x0 >= 0) and the row
  // sum(x) = const keeps every instance bounded.
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    int m = 3, n = 6;
    Mat a(m, n);
    Vec x0(n), c(n);
    for (int j = 0; j < n; ++j) {
      x0[j] = rng::uniform(seed, j, 7, 0.0, 2.0);
      c[j] = rng::uniform(seed, j, 8, -1.0, 1.0);
      a(0, j) = 1.0;
      for (int i = 1; i < m; ++i) a(i, j) = rng::uniform(seed, j, 10 + i, -1.0, 1.0);
    }
    Vec b = matvec(a, x0);
    lp::Result r = lp::solve(a, b, c, 10000);
    REQUIRE(r.status == lp::Status::optimal);
    bool feasible = false;
    double best = enumerate_optimum(a, b, c, feasible);
    REQUIRE(feasible);
    CHECK(r.objective == doctest::Approx(best).epsilon(1e-9));
    // The reported point must be feasible and achieve the objective.
    Vec ax = matvec(a, r.x);
    for (int i = 0; i < m; ++i) CHECK(ax[i] == doctest::Approx(b[i]).epsilon(1e-9));
    double obj = 0.0;
    for (int j = 0; j < n; ++j) {
      CHECK(r.x[j] >= -1e-9);
      obj += c[j] * r.x[j];
    }
    CHECK(obj == doctest::Approx(r.objective).epsilon(1e-12));
  }
}

TEST_CASE("vertex-hull gauge values via lp_minsum") {
  std::vector<Vec> square = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  CHECK(lp_minsum(square, {}, {1, 1}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lp_minsum(square, {}, {0.5, -0.25}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(lp_minsum(square, {}, {0, 0}) == doctest::Approx(0.0));

  std::vector<Vec> triangle = {{1, 0}, {0, 1}, {-1, -1}};
  CHECK(lp_minsum(triangle, {}, {-1, 0}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(lp_minsum(triangle, {}, {1, 0}) == doctest::Approx(1.0).epsilon(1e-12));

  // Unbounded hull: points reachable only through the ray cost nothing extra,
  // and a direction outside the hull+cone has infinite gauge.
  std::vector<Vec> wedge = {{1, 0}, {-1, 0}, {0, -1}};
  std::vector<Vec> up = {{0, 1}};
  CHECK(lp_minsum(wedge, up, {0, 5}) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(lp_minsum(wedge, up, {0, -2}) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(lp_minsum(wedge, up, {2, 0}) == doctest::Approx(2.0).epsilon(1e-9));

  std::vector<Vec> segment = {{1, 0}, {-1, 0}};
  CHECK(std::isinf(lp_minsum(segment, {}, {0, 1})));
}
