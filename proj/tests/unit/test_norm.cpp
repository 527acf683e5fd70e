#include "doctest.h"

#include <cmath>
#include <vector>

#include "minkgeo/error.hpp"
#include "minkgeo/norm.hpp"
#include "minkgeo/rng.hpp"

using namespace minkgeo;

namespace {

Mat make(int r, int c, std::initializer_list<double> vals) {
  Mat m(r, c);
  int k = 0;
  for (double v : vals) m.a[k++] = v;
  return m;
}

WeakNorm square_norm() {
  return WeakNorm::from_body(
      ConvexBody::hpolytope({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {1, 1, 1, 1}));
}
WeakNorm triangle_norm() {
  return WeakNorm::from_body(ConvexBody::vpolytope({{1, 0}, {0, 1}, {-1, -1}}));
}
WeakNorm ellipse_norm() {
  return WeakNorm::from_body(ConvexBody::ellipsoid(make(2, 2, {1, 0, 0, 4})));
}
WeakNorm strip_norm() {
  return WeakNorm::from_body(ConvexBody::hpolytope({{1, 0}, {-1, 0}, {0, 1}}, {1, 1, 1}));
}

SamplingPlan plan(std::uint64_t seed, int count) {
  SamplingPlan p;
  p.seed = seed;
  p.count = count;
  return p;
}

// Segment-to-point distance, for the polygon Hausdorff oracle below.
double dist_to_segment(const Vec& p, const Vec& a, const Vec& b) {
  Vec ab = sub(b, a);
  double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? std::clamp(dot(sub(p, a), ab) / len2, 0.0, 1.0) : 0.0;
  return norm2(sub(p, add(a, scale(ab, t))));
}

double dist_to_polygon(const Vec& p, const std::vector<Vec>& verts) {
  double best = kInf;
  for (size_t i = 0; i < verts.size(); ++i)
    best = std::min(best, dist_to_segment(p, verts[i], verts[(i + 1) % verts.size()]));
  return best;
}

// Distance to the closed polygon through the cloud points in emission order.
double dist_to_cloud_polygon(const Vec& p, const std::vector<Vec>& cloud) {
  double best = kInf;
  for (size_t i = 0; i < cloud.size(); ++i)
    best = std::min(best, dist_to_segment(p, cloud[i], cloud[(i + 1) % cloud.size()]));
  return best;
}

}  // namespace

TEST_CASE("classification of the reversible corpus norms") {
  NormClassification sq = classify_norm(square_norm(), plan(5, 2048));
  CHECK(sq.finite);
  CHECK(sq.separating);
  CHECK(sq.weakly_separating);
  CHECK(sq.reversible);
  CHECK(sq.quasi_constant == doctest::Approx(1.0));

  NormClassification el = classify_norm(ellipse_norm(), plan(5, 2048));
  CHECK(el.analytic);
  CHECK(el.finite);
  CHECK(el.separating);
  CHECK(el.reversible);
  CHECK(el.quasi_constant == doctest::Approx(1.0));

  NormClassification l4 = classify_norm(WeakNorm::from_body(ConvexBody::lp_ball(4.0, {1, 1})),
                                        plan(5, 2048));
  CHECK(l4.analytic);
  CHECK(l4.reversible);
}

TEST_CASE("the triangle gauge is quasi-reversible with constant two") {
  NormClassification tri = classify_norm(triangle_norm(), plan(9, 4096));
  CHECK(tri.finite);
  CHECK(tri.separating);
  CHECK(tri.weakly_separating);
  CHECK_FALSE(tri.reversible);
  // F(1,0) = 1 against F(-1,0) = 2; the sampled sweep must get close and
  // never exceed the exact constant.
  CHECK(tri.quasi_constant >= 1.8);
  CHECK(tri.quasi_constant <= 2.0 + 1e-6);
}

TEST_CASE("the strip is finite and weakly separating but not separating") {
  NormClassification st = classify_norm(strip_norm(), plan(7, 2048));
  CHECK(st.finite);
  CHECK_FALSE(st.separating);
  CHECK(st.weakly_separating);
  CHECK_FALSE(st.reversible);
  // The true constant is infinite (F(0,-1)=0 yet F(0,1)=1); the sampled sweep
  // reports a large ratio that grows with the sample count.
  CHECK(st.quasi_constant > 10.0);
}

TEST_CASE("linear forms separate nothing in dimension two") {
  NormClassification lf = classify_norm(WeakNorm::linear_form({1, 0}), plan(3, 256));
  CHECK(lf.analytic);
  CHECK(lf.finite);
  CHECK_FALSE(lf.separating);
  CHECK_FALSE(lf.weakly_separating);
  CHECK_FALSE(lf.reversible);
  CHECK(std::isinf(lf.quasi_constant));

  // On the line a nonzero form still tells two orders apart.
  NormClassification one = classify_norm(WeakNorm::linear_form({2}), plan(3, 256));
  CHECK(one.weakly_separating);
  CHECK_FALSE(one.separating);

  NormClassification zero = classify_norm(WeakNorm::linear_form({0, 0}), plan(3, 256));
  CHECK(zero.reversible);
  CHECK(zero.quasi_constant == doctest::Approx(1.0));
}

TEST_CASE("classify_norm refuses an under-determined plan") {
  CHECK_THROWS_AS(classify_norm(square_norm(), plan(1, 3)), Error);
}

TEST_CASE("euclidean sandwich constants") {
  // max norm: 1/sqrt(2) <= F(u) <= 1 on the unit circle.
  auto [lo_sq, hi_sq] = euclidean_sandwich(square_norm(), plan(11, 1024));
  CHECK(lo_sq == doctest::Approx(std::sqrt(0.5)).epsilon(1e-5));
  CHECK(hi_sq == doctest::Approx(1.0).epsilon(1e-12));

  auto [lo_el, hi_el] = euclidean_sandwich(ellipse_norm(), plan(11, 1024));
  CHECK(lo_el == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(hi_el == doctest::Approx(2.0).epsilon(1e-5));

  // The constants really do sandwich on fresh points.
  for (int i = 0; i < 500; ++i) {
    Vec u = rng::sphere(1234, i, 2);
    double f = square_norm()(u);
    CHECK(f >= lo_sq);
    CHECK(f <= hi_sq * (1.0 + 1e-12));
  }

  CHECK_THROWS_AS(euclidean_sandwich(strip_norm(), plan(11, 1024)), Error);
  CHECK_THROWS_AS(euclidean_sandwich(WeakNorm::linear_form({1, 0}), plan(11, 1024)), Error);
}

TEST_CASE("indicatrix points scale directions onto the unit sphere") {
  auto sq = square_norm();
  auto p = indicatrix_point(sq, {3, 3});
  REQUIRE(p.has_value());
  CHECK((*p)[0] == doctest::Approx(1.0));
  CHECK((*p)[1] == doctest::Approx(1.0));

  auto q = indicatrix_point(ellipse_norm(), {0, 2});
  REQUIRE(q.has_value());
  CHECK((*q)[1] == doctest::Approx(0.5));

  // Degenerate directions have no indicatrix point.
  CHECK_FALSE(indicatrix_point(WeakNorm::linear_form({1, 0}), Vec{-1, 0}).has_value());
  CHECK_FALSE(indicatrix_point(strip_norm(), Vec{0, -1}).has_value());
}

TEST_CASE("reconstruct_ball at tiny resolution picks the axis points") {
  std::vector<Vec> pts = reconstruct_ball(square_norm(), 4);
  REQUIRE(pts.size() == 4);
  const Vec expect[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int k = 0; k < 4; ++k) {
    CHECK(pts[k][0] == doctest::Approx(expect[k][0]).epsilon(1e-9));
    CHECK(pts[k][1] == doctest::Approx(expect[k][1]).epsilon(1e-9));
  }
}

TEST_CASE("reconstructed boundary points have unit gauge") {
  for (const WeakNorm& norm : {square_norm(), triangle_norm(), ellipse_norm()}) {
    for (const Vec& p : reconstruct_ball(norm, 256)) {
      CHECK(norm(p) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("triangle ball reconstruction matches the polygon within the Hausdorff budget") {
  const int res = 3600;
  std::vector<Vec> verts = {{1, 0}, {0, 1}, {-1, -1}};
  double diam = std::sqrt(5.0);  // the two long sides dominate
  double tol = 2.0 * kPi / res * diam;

  std::vector<Vec> cloud = reconstruct_ball(triangle_norm(), res);
  REQUIRE(static_cast<int>(cloud.size()) == res);

  double forward = 0.0;
  for (const Vec& p : cloud) forward = std::max(forward, dist_to_polygon(p, verts));
  CHECK(forward <= tol);

  // Backward direction: walk the true boundary densely (vertices included,
  // where any corner cutting would show) against the reconstructed polygon.
  double backward = 0.0;
  const int per_edge = 600;
  for (size_t e = 0; e < verts.size(); ++e) {
    const Vec& a = verts[e];
    const Vec& b = verts[(e + 1) % verts.size()];
    for (int k = 0; k <= per_edge; ++k) {
      Vec s = add(a, scale(sub(b, a), static_cast<double>(k) / per_edge));
      backward = std::max(backward, dist_to_cloud_polygon(s, cloud));
    }
  }
  CHECK(backward <= tol);
}

TEST_CASE("reconstruct_ball works on the 2-sphere too") {
  WeakNorm ball3 = WeakNorm::from_body(ConvexBody::lp_ball(2.0, {1, 1, 1}));
  std::vector<Vec> pts = reconstruct_ball(ball3, 500);
  REQUIRE(pts.size() == 500);
  for (const Vec& p : pts) CHECK(norm2(p) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("reconstruct_ball input validation") {
  CHECK_THROWS_AS(reconstruct_ball(square_norm(), 2), Error);
  WeakNorm ball4 = WeakNorm::from_body(ConvexBody::lp_ball(2.0, {1, 1, 1, 1}));
  CHECK_THROWS_AS(reconstruct_ball(ball4, 100), Error);
}

TEST_CASE("custom norms evaluate through the shared interface") {
  WeakNorm cap = WeakNorm::custom(2, [](const Vec& x) { return std::max(norm2(x), 1.0); }, "capped");
  CHECK(cap({0, 0}) == doctest::Approx(1.0));
  CHECK(cap({3, 4}) == doctest::Approx(5.0));
  CHECK(cap.dim() == 2);
  CHECK(cap.label() == "capped");
  CHECK(cap.body() == nullptr);
}
