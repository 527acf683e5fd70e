#include "minkgeo/projective.hpp"

#include <algorithm>
#include <cmath>

#include "minkgeo/error.hpp"
#include "minkgeo/util.hpp"

namespace minkgeo {
namespace {

void require_interior(const ConvexBody& body, const Vec& p, const char* who) {
  if (static_cast<int>(p.size()) != body.dim())
    fail_schema(std::string(who) + ": point dimension mismatch");
  if (!(gauge(body, p) < 1.0)) fail_domain(std::string(who) + ": point must be interior");
}

void check_simplex_point(const Vec& x) {
  if (x.empty()) fail_schema("simplex point must be nonempty");
  double sum = 0.0;
  for (double c : x) {
    if (!(c > 0.0)) fail_domain("simplex coordinates must be positive");
    sum += c;
  }
  if (std::abs(sum - 1.0) > 1e-12) fail_domain("simplex coordinates must sum to 1");
}

}  // namespace

double minkowski_ratio_distance(const ConvexBody& body, const Vec& x, const Vec& y) {
  if (x.size() != y.size() || static_cast<int>(x.size()) != body.dim())
    fail_schema("ratio distance: point dimension mismatch");
  Vec d = sub(y, x);
  double len = norm2(d);
  if (len == 0.0) return 0.0;
  Vec zero(x.size(), 0.0);
  double t = ray_boundary(body, zero, scale(d, 1.0 / len));
  if (std::isinf(t)) return 0.0;  // recession direction: the metric does not separate
  if (t <= 0.0) return kInf;
  return len / t;
}

double funk_distance(const ConvexBody& body, const Vec& x, const Vec& y) {
  require_interior(body, x, "funk");
  require_interior(body, y, "funk");
  Vec d = sub(y, x);
  double len = norm2(d);
  if (len == 0.0) return 0.0;
  double t = ray_boundary(body, x, scale(d, 1.0 / len));
  if (std::isinf(t)) return 0.0;
  if (t <= len)
    fail_numeric("funk: forward boundary point does not lie beyond the target point");
  return std::log(t / (t - len));
}

double hilbert_distance(const ConvexBody& body, const Vec& x, const Vec& y) {
  return 0.5 * (funk_distance(body, x, y) + funk_distance(body, y, x));
}

double simplex_hilbert(const Vec& x, const Vec& y) {
  check_simplex_point(x);
  check_simplex_point(y);
  if (x.size() != y.size()) fail_schema("simplex points must share one dimension");
  double up = 0.0, down = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    up = std::max(up, x[i] / y[i]);
    down = std::max(down, y[i] / x[i]);
  }
  return std::log(up * down);
}

Vec simplex_to_minkowski(const Vec& x) {
  check_simplex_point(x);
  std::size_t k = x.size();
  Vec out(k - 1);
  for (std::size_t i = 0; i + 1 < k; ++i) out[i] = std::log(x[i] / x[k - 1]);
  return out;
}

WeakNorm variation_norm(int k) {
  if (k < 2) fail_schema("variation norm needs at least 2 barycentric coordinates");
  int n = k - 1;
  // Facets v_i - v_j <= 1 over the zero-padded coordinates, i != j.
  int rows = k * (k - 1);
  std::vector<Vec> normals;
  normals.reserve(rows);
  Vec offsets(rows, 1.0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      Vec row(n, 0.0);
      if (i < n) row[i] += 1.0;
      if (j < n) row[j] -= 1.0;
      normals.push_back(std::move(row));
    }
  return WeakNorm::from_body(ConvexBody::hpolytope(std::move(normals), std::move(offsets)));
}

ConvexBody embedded_simplex_body(int k) {
  if (k < 2) fail_schema("simplex embedding needs at least 2 barycentric coordinates");
  int n = k - 1;
  // Vertices are the embedded unit barycentric points e_i.
  std::vector<Vec> vertices(k, Vec(n, -1.0 / static_cast<double>(k)));
  for (int i = 0; i < n; ++i) vertices[i][i] += 1.0;
  return ConvexBody::vpolytope(std::move(vertices));
}

Vec embed_simplex_point(const Vec& x) {
  check_simplex_point(x);
  std::size_t k = x.size();
  Vec out(k - 1);
  for (std::size_t i = 0; i + 1 < k; ++i) out[i] = x[i] - 1.0 / static_cast<double>(k);
  return out;
}

double funk_ball_radius(const ConvexBody& body, const Vec& center, const Vec& dir, double r) {
  require_interior(body, center, "funk ball");
  if (!(r >= 0.0)) fail_schema("ball radius must be nonnegative");
  double t = ray_boundary(body, center, normalized(dir));
  if (std::isinf(t)) return kInf;  // zero Funk cost along an open direction
  return t * (1.0 - std::exp(-r));
}

double hilbert_ball_radius(const ConvexBody& body, const Vec& center, const Vec& dir, double r) {
  require_interior(body, center, "hilbert ball");
  if (!(r >= 0.0)) fail_schema("ball radius must be nonnegative");
  Vec u = normalized(dir);
  double tf = ray_boundary(body, center, u);
  double tb = ray_boundary(body, center, scale(u, -1.0));
  if (std::isinf(tf) || std::isinf(tb))
    fail_domain("hilbert ball requires a bounded chord through the center");
  if (r == 0.0) return 0.0;
  // 2r = log(tf/(tf-s)) + log((tb+s)/tb), increasing in s on [0, tf).
  auto cost = [&](double s) { return std::log(tf / (tf - s)) + std::log((tb + s) / tb); };
  double lo = 0.0;
  double hi = tf * (1.0 - std::exp(-2.0 * r));  // forward term alone reaches 2r here
  for (int it = 0; it < 200; ++it) {
    double midpt = 0.5 * (lo + hi);
    if (cost(midpt) < 2.0 * r)
      lo = midpt;
    else
      hi = midpt;
    if (hi - lo <= 1e-15 * (1.0 + hi)) break;
  }
  return 0.5 * (lo + hi);
}

MetricOracle funk_oracle(BodyPtr body) {
  if (!body) fail_schema("funk oracle requires a body");
  MetricOracle oracle;
  oracle.dim = body->dim();
  oracle.name = "funk";
  oracle.domain = body;
  oracle.domain_radius = enclosing_radius(*body);
  oracle.eval = [body](const Vec& x, const Vec& y) { return funk_distance(*body, x, y); };
  return oracle;
}

MetricOracle hilbert_oracle(BodyPtr body) {
  if (!body) fail_schema("hilbert oracle requires a body");
  MetricOracle oracle;
  oracle.dim = body->dim();
  oracle.name = "hilbert";
  oracle.domain = body;
  oracle.domain_radius = enclosing_radius(*body);
  oracle.eval = [body](const Vec& x, const Vec& y) { return hilbert_distance(*body, x, y); };
  return oracle;
}

}  // namespace minkgeo
