#include "minkgeo/metric.hpp"

#include <cmath>

#include "minkgeo/error.hpp"
#include "minkgeo/rng.hpp"

namespace minkgeo {

MetricOracle metric_from_norm(const WeakNorm& norm) {
  MetricOracle o;
  o.dim = norm.dim();
  o.name = "metric:" + norm.label();
  o.eval = [norm](const Vec& x, const Vec& y) { return norm(sub(y, x)); };
  return o;
}

MetricOracle pathological(const std::string& name, int dim, double alpha) {
  if (dim < 1) fail_schema("pathological: dimension must be at least 1");
  MetricOracle o;
  o.dim = dim;
  o.name = "pathological:" + name;
  if (name == "capped_norm") {
    o.eval = [](const Vec& x, const Vec& y) { return std::max(norm2(sub(y, x)), 1.0); };
  } else if (name == "power") {
    if (!(alpha > 0.0) || !(alpha <= 1.0))
      fail_schema("pathological power: alpha must lie in (0, 1]");
    o.eval = [alpha](const Vec& x, const Vec& y) { return std::pow(norm2(sub(y, x)), alpha); };
  } else if (name == "exp_coordinates") {
    o.eval = [](const Vec& x, const Vec& y) {
      double m = 0.0;
      for (size_t j = 0; j < x.size(); ++j)
        m = std::max(m, std::fabs(std::exp(y[j]) - std::exp(x[j])));
      return m;
    };
  } else {
    fail_schema("pathological: unknown oracle \"" + name + "\"");
  }
  return o;
}

double enclosing_radius(const ConvexBody& body) {
  int n = body.dim();
  double worst = 0.0;
  auto probe = [&](const Vec& u) {
    double f = gauge(body, u);
    if (f > 0.0 && !std::isinf(f)) worst = std::max(worst, 1.0 / f);
  };
  for (int k = 0; k < n; ++k) {
    Vec e(n, 0.0);
    e[k] = 1.0;
    probe(e);
    e[k] = -1.0;
    probe(e);
  }
  for (int i = 0; i < 128; ++i) probe(rng::sphere(0x9d2c5680, i, n));
  return worst > 0.0 ? worst * 1.05 : 1.0;
}

Vec sample_domain_point(const MetricOracle& oracle, const SamplingPlan& plan, std::uint64_t index,
                        std::uint64_t point_slot) {
  int n = oracle.dim;
  if (!oracle.domain)
    return rng::box_point(plan.seed, index, n, plan.box_halfwidth, point_slot * 64);
  // rejection from the enclosing box of the domain body; each candidate uses a
  // fresh slot block so acceptance history cannot leak between indices
  double radius = oracle.domain_radius > 0.0 ? oracle.domain_radius : plan.box_halfwidth;
  for (std::uint64_t attempt = 0; attempt < 4096; ++attempt) {
    Vec candidate =
        rng::box_point(plan.seed, index, n, radius, point_slot * 1048576 + attempt * 64);
    if (gauge(*oracle.domain, candidate) < 1.0) return candidate;
  }
  fail_numeric("sample_domain_point: rejection sampling failed to hit the domain interior");
}

}  // namespace minkgeo
