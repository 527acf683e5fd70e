#include "doctest.h"

#include <cmath>
#include <memory>
#include <vector>

#include "minkgeo/checkers.hpp"
#include "minkgeo/error.hpp"
#include "minkgeo/projective.hpp"
#include "minkgeo/rng.hpp"

using namespace minkgeo;

namespace {

Mat make(int r, int c, std::initializer_list<double> vals) {
  Mat m(r, c);
  int k = 0;
  for (double v : vals) m.a[k++] = v;
  return m;
}

ConvexBody disc() { return ConvexBody::ellipsoid(Mat::identity(2)); }
ConvexBody square() {
  return ConvexBody::hpolytope({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {1, 1, 1, 1});
}
ConvexBody triangle() { return ConvexBody::vpolytope({{1, 0}, {0, 1}, {-1, -1}}); }

// Positive coordinates summing to one, seeded and smooth in the index.
Vec simplex_point(int k, std::uint64_t seed, std::uint64_t index, std::uint64_t slot) {
  Vec x(k);
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    x[i] = std::exp(rng::uniform(seed, index, slot + i, -1.5, 1.5));
    sum += x[i];
  }
  for (double& v : x) v /= sum;
  return x;
}

Vec interior_point(const ConvexBody& body, std::uint64_t seed, std::uint64_t index,
                   std::uint64_t slot) {
  Vec u = rng::sphere(seed, index, body.dim(), slot);
  double r = rng::u01(seed, index, slot + 37);
  double t = ray_boundary(body, Vec(body.dim(), 0.0), u);
  return scale(u, 0.85 * r * t);
}

SamplingPlan plan(std::uint64_t seed, int count) {
  SamplingPlan p;
  p.seed = seed;
  p.count = count;
  return p;
}

}  // namespace

TEST_CASE("ratio distance from the origin-anchored boundary point") {
  CHECK(minkowski_ratio_distance(disc(), {0, 0}, {3, 1}) ==
        doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));
  CHECK(minkowski_ratio_distance(square(), {1, 1}, {4, 2}) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(minkowski_ratio_distance(triangle(), {0, 0}, {-1, 0}) ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK(minkowski_ratio_distance(disc(), {0.4, -0.7}, {0.4, -0.7}) == 0.0);
}

TEST_CASE("ratio distance is the gauge of the difference") {
  for (const ConvexBody& body : {square(), triangle(), ConvexBody::ellipsoid(make(2, 2, {1, 0, 0, 4}))}) {
    CAPTURE(body.kind());
    for (int i = 0; i < 500; ++i) {
      Vec x = rng::box_point(301, i, 2, 4.0, 0);
      Vec y = rng::box_point(301, i, 2, 4.0, 8);
      double lhs = minkowski_ratio_distance(body, x, y);
      double rhs = gauge(body, sub(y, x));
      CHECK(std::fabs(lhs - rhs) <= 1e-9 * (1.0 + rhs));
    }
  }
}

TEST_CASE("ratio distance vanishes along recession directions") {
  ConvexBody wedge = ConvexBody::vpolytope({{1, 0}, {-1, 0}, {0, -1}}, {{0, 1}});
  CHECK(minkowski_ratio_distance(wedge, {0, 0}, {0, 2}) == 0.0);
  ConvexBody strip = ConvexBody::hpolytope({{1, 0}, {-1, 0}, {0, 1}}, {1, 1, 1});
  CHECK(minkowski_ratio_distance(strip, {0.3, 0.5}, {0.3, -2.0}) == 0.0);
}

TEST_CASE("funk distances on the disc and the square") {
  CHECK(funk_distance(disc(), {0, 0}, {0.5, 0}) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(funk_distance(disc(), {0.5, 0}, {0, 0}) == doctest::Approx(std::log(1.5)).epsilon(1e-12));
  CHECK(funk_distance(square(), {0, 0}, {0.5, 0}) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(funk_distance(disc(), {0.3, -0.2}, {0.3, -0.2}) == 0.0);
  CHECK(hilbert_distance(disc(), {0, 0}, {0.5, 0}) ==
        doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("funk requires interior points") {
  CHECK_THROWS_AS(funk_distance(disc(), {0, 0}, {1.5, 0}), Error);
  CHECK_THROWS_AS(funk_distance(disc(), {1.0, 0}, {0, 0}), Error);
  CHECK_THROWS_AS(funk_distance(disc(), {0, 0}, {0.5}), Error);
}

TEST_CASE("open directions contribute nothing to the funk distance") {
  ConvexBody strip = ConvexBody::hpolytope({{1, 0}, {-1, 0}, {0, 1}}, {1, 1, 1});
  CHECK(funk_distance(strip, {0, 0}, {0, -0.5}) == 0.0);
  // The reverse order runs into the roof and costs log(1/(1-1/2)).
  CHECK(funk_distance(strip, {0, -0.5}, {0, 0}) ==
        doctest::Approx(std::log(1.5 / 1.0)).epsilon(1e-9));
}

TEST_CASE("hilbert distance is symmetric and projective along chords") {
  for (const ConvexBody& body : {disc(), square(), triangle()}) {
    CAPTURE(body.kind());
    for (int i = 0; i < 200; ++i) {
      Vec x = interior_point(body, 404, i, 0);
      Vec y = interior_point(body, 404, i, 50);
      double h1 = hilbert_distance(body, x, y);
      double h2 = hilbert_distance(body, y, x);
      CHECK(std::fabs(h1 - h2) <= 1e-12);
      // A point one third of the way splits the distance additively.
      Vec m = add(x, scale(sub(y, x), 1.0 / 3.0));
      double sum = hilbert_distance(body, x, m) + hilbert_distance(body, m, y);
      CHECK(std::fabs(sum - h1) <= 1e-9 * (1.0 + h1));
    }
  }
}

TEST_CASE("simplex closed form") {
  Vec bary = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  Vec tilted = {0.5, 0.25, 0.25};
  CHECK(simplex_hilbert(bary, tilted) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(simplex_hilbert(tilted, bary) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(simplex_hilbert(bary, bary) == 0.0);

  // Two coordinates: the interval formula log(t(1-s)/(s(1-t))).
  CHECK(simplex_hilbert({0.5, 0.5}, {0.25, 0.75}) == doctest::Approx(std::log(3.0)).epsilon(1e-12));

  CHECK_THROWS_AS(simplex_hilbert({0.5, 0.5}, {0.5, -0.5}), Error);
  CHECK_THROWS_AS(simplex_hilbert({0.5, 0.4}, {0.5, 0.5}), Error);
  CHECK_THROWS_AS(simplex_hilbert({0.5, 0.5}, {0.25, 0.25, 0.5}), Error);
  CHECK_THROWS_AS(simplex_hilbert({}, {}), Error);
}

TEST_CASE("log chart sends the barycenter to the origin") {
  Vec l1 = simplex_to_minkowski({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  CHECK(std::fabs(l1[0]) <= 1e-15);
  CHECK(std::fabs(l1[1]) <= 1e-15);
  Vec l2 = simplex_to_minkowski({0.5, 0.25, 0.25});
  CHECK(l2[0] == doctest::Approx(std::log(2.0)));
  CHECK(std::fabs(l2[1]) <= 1e-15);
}

TEST_CASE("variation norm evaluates the coordinate spread") {
  WeakNorm n3 = variation_norm(3);
  REQUIRE(n3.body());
  CHECK(std::string(n3.body()->kind()) == "hpolytope");
  CHECK(n3({1, -1}) == doctest::Approx(2.0));
  CHECK(n3({1, 1}) == doctest::Approx(1.0));
  for (int i = 0; i < 500; ++i) {
    Vec v = rng::box_point(505, i, 2, 3.0);
    double spread = std::max({v[0], v[1], 0.0}) - std::min({v[0], v[1], 0.0});
    CHECK(n3(v) == doctest::Approx(spread).epsilon(1e-12));
  }
  CHECK_THROWS_AS(variation_norm(1), Error);
}

TEST_CASE("the log chart is an isometry onto the variation norm") {
  for (int k = 2; k <= 5; ++k) {
    CAPTURE(k);
    WeakNorm nk = variation_norm(k);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      Vec x = simplex_point(k, 606 + k, i, 0);
      Vec y = simplex_point(k, 606 + k, i, 32);
      double closed = simplex_hilbert(x, y);
      double mapped = nk(sub(simplex_to_minkowski(x), simplex_to_minkowski(y)));
      worst = std::max(worst, std::fabs(closed - mapped));
    }
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("embedded simplex cross-ratio agrees with the closed form") {
  ConvexBody body = embedded_simplex_body(3);
  CHECK(std::string(body.kind()) == "vpolytope");

  Vec b0 = embed_simplex_point({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  CHECK(norm2(b0) <= 1e-15);

  Vec x = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  Vec y = {0.5, 0.25, 0.25};
  double cross = funk_distance(body, embed_simplex_point(x), embed_simplex_point(y)) +
                 funk_distance(body, embed_simplex_point(y), embed_simplex_point(x));
  CHECK(cross == doctest::Approx(std::log(2.0)).epsilon(1e-9));

  for (int i = 0; i < 200; ++i) {
    Vec p = simplex_point(3, 707, i, 0);
    Vec q = simplex_point(3, 707, i, 32);
    double closed = simplex_hilbert(p, q);
    double viaBody = funk_distance(body, embed_simplex_point(p), embed_simplex_point(q)) +
                     funk_distance(body, embed_simplex_point(q), embed_simplex_point(p));
    CHECK(std::fabs(closed - viaBody) <= 1e-7 * (1.0 + closed));
  }
}

TEST_CASE("funk and hilbert ball radii on the disc") {
  CHECK(funk_ball_radius(disc(), {0, 0}, {1, 0}, std::log(2.0)) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(hilbert_ball_radius(disc(), {0, 0}, {1, 0}, 0.5 * std::log(3.0)) ==
        doctest::Approx(0.5).epsilon(1e-9));
  CHECK(hilbert_ball_radius(disc(), {0, 0}, {0, -1}, 0.5 * std::log(3.0)) ==
        doctest::Approx(0.5).epsilon(1e-9));
  CHECK(funk_ball_radius(disc(), {0, 0}, {1, 0}, 0.0) == 0.0);
  CHECK(hilbert_ball_radius(disc(), {0, 0}, {1, 0}, 0.0) == 0.0);

  // Off-center in the square: the reached point sits at the stated distance.
  double s = funk_ball_radius(square(), {0.2, 0.0}, {1, 0}, std::log(2.0));
  CHECK(s == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(funk_distance(square(), {0.2, 0.0}, {0.2 + s, 0.0}) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  double hs = hilbert_ball_radius(square(), {0.2, 0.0}, {1, 0}, 0.7);
  CHECK(hilbert_distance(square(), {0.2, 0.0}, {0.2 + hs, 0.0}) ==
        doctest::Approx(0.7).epsilon(1e-9));

  // Open directions are free for the Funk ball, fatal for the Hilbert chord.
  ConvexBody strip = ConvexBody::hpolytope({{1, 0}, {-1, 0}, {0, 1}}, {1, 1, 1});
  CHECK(std::isinf(funk_ball_radius(strip, {0, 0}, {0, -1}, 1.0)));
  CHECK_THROWS_AS(hilbert_ball_radius(strip, {0, 0}, {0, 1}, 1.0), Error);

  CHECK_THROWS_AS(funk_ball_radius(disc(), {0, 0}, {1, 0}, -1.0), Error);
  CHECK_THROWS_AS(funk_oracle(nullptr), Error);
}

TEST_CASE("funk oracles pass the weak axioms and projectivity but not reversibility") {
  for (const ConvexBody& b : {disc(), square(), triangle()}) {
    CAPTURE(b.kind());
    auto body = std::make_shared<const ConvexBody>(b);
    MetricOracle funk = funk_oracle(body);
    SamplingPlan pl = plan(808, 300);
    CHECK(check_weak_axioms(funk, pl).verdict == Verdict::pass);
    CHECK(check_projective(funk, pl).verdict == Verdict::pass);
    PropertyReport rev = check_reversibility(funk, pl);
    CHECK(rev.verdict == Verdict::fail);
    REQUIRE(rev.witness);
    // The reported pair really is asymmetric.
    double d1 = funk(rev.witness->points[0], rev.witness->points[1]);
    double d2 = funk(rev.witness->points[1], rev.witness->points[0]);
    CHECK(std::fabs(d1 - d2) > 1e-6);
  }
}

TEST_CASE("funk distances near the boundary break translation invariance") {
  auto body = std::make_shared<const ConvexBody>(disc());
  PropertyReport tr = check_translation_invariance(funk_oracle(body), plan(909, 300));
  CHECK(tr.verdict == Verdict::fail);
  REQUIRE(tr.witness);
}

TEST_CASE("hilbert oracle is reversible") {
  auto body = std::make_shared<const ConvexBody>(disc());
  MetricOracle h = hilbert_oracle(body);
  SamplingPlan pl = plan(111, 300);
  CHECK(check_weak_axioms(h, pl).verdict == Verdict::pass);
  PropertyReport rev = check_reversibility(h, pl);
  CHECK(rev.verdict == Verdict::pass);
  CHECK(*rev.quasi_constant == doctest::Approx(1.0).epsilon(1e-9));
}
