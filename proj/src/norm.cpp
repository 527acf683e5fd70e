#include "minkgeo/norm.hpp"

#include <algorithm>
#include <cmath>

#include "minkgeo/error.hpp"
#include "minkgeo/rng.hpp"
#include "minkgeo/util.hpp"

namespace minkgeo {

struct WeakNorm::Impl {
  int dim = 0;
  std::string label;
  std::optional<ConvexBody> body;
  std::optional<Vec> phi;
  std::function<double(const Vec&)> fn;
};

WeakNorm WeakNorm::from_body(ConvexBody body) {
  auto impl = std::make_shared<Impl>();
  impl->dim = body.dim();
  impl->label = std::string("gauge:") + body.kind();
  impl->body = std::move(body);
  return WeakNorm(std::move(impl));
}

WeakNorm WeakNorm::linear_form(Vec phi) {
  if (phi.empty()) fail_schema("linear_form: empty coefficient vector");
  auto impl = std::make_shared<Impl>();
  impl->dim = static_cast<int>(phi.size());
  impl->label = "linear_form";
  impl->phi = std::move(phi);
  return WeakNorm(std::move(impl));
}

WeakNorm WeakNorm::custom(int dim, std::function<double(const Vec&)> fn, std::string label) {
  if (dim < 1) fail_schema("custom norm: dimension must be at least 1");
  auto impl = std::make_shared<Impl>();
  impl->dim = dim;
  impl->label = std::move(label);
  impl->fn = std::move(fn);
  return WeakNorm(std::move(impl));
}

double WeakNorm::operator()(const Vec& x) const {
  if (static_cast<int>(x.size()) != impl_->dim) fail_domain("norm: point has wrong dimension");
  if (impl_->body) return gauge(*impl_->body, x);
  if (impl_->phi) return std::max(0.0, dot(*impl_->phi, x));
  double v = impl_->fn(x);
  if (std::isnan(v)) fail_numeric("norm evaluator returned NaN");
  return v;
}

int WeakNorm::dim() const { return impl_->dim; }
const ConvexBody* WeakNorm::body() const { return impl_->body ? &*impl_->body : nullptr; }
const Vec* WeakNorm::form() const { return impl_->phi ? &*impl_->phi : nullptr; }
const std::string& WeakNorm::label() const { return impl_->label; }

// ---------------------------------------------------------------------------
// classification

namespace {

struct Tri {  // three-valued flag
  bool known = false;
  bool value = false;
};

Tri yes() { return {true, true}; }
Tri no() { return {true, false}; }

struct AnalyticFlags {
  Tri finite, separating, weakly, reversible;
  bool quasi_known = false;
  double quasi = kInf;
};

// what the source representation settles without sampling
AnalyticFlags analytic_flags(const WeakNorm& norm) {
  AnalyticFlags f;
  if (const Vec* phi = norm.form()) {
    bool zero = true;
    for (double v : *phi) zero = zero && v == 0.0;
    f.finite = yes();
    f.separating = no();  // max(0, phi.x) vanishes on a halfspace
    f.weakly = (norm.dim() == 1 && !zero) ? yes() : no();
    f.reversible = zero ? yes() : no();
    f.quasi_known = true;
    f.quasi = zero ? 1.0 : kInf;
    return f;
  }
  const ConvexBody* body = norm.body();
  if (!body) return f;
  // separating iff bounded, for every representation
  f.separating = recession_ray(*body) ? no() : yes();
  struct V {
    AnalyticFlags& f;
    const ConvexBody& b;
    void operator()(const HPolytopeData& d) const {
      bool fin = true;
      for (double off : d.offsets) fin = fin && off > 0.0;
      f.finite = fin ? yes() : no();
      // max(F(x), F(-x)) vanishes exactly on the orthogonal complement of the
      // facet normals, so weak separation is a rank question
      int n = b.dim();
      Mat gram(n, n);
      for (const Vec& a : d.normals)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) gram(i, j) += a[i] * a[j];
      SymEigen e = jacobi_eigensystem(gram);
      f.weakly = (e.values.front() > 1e-10 * std::max(1.0, e.values.back())) ? yes() : no();
    }
    void operator()(const VPolytopeData&) const {}
    void operator()(const EllipsoidData&) const {
      f.finite = yes();
      f.weakly = yes();
      f.reversible = yes();
      f.quasi_known = true;
      f.quasi = 1.0;
    }
    void operator()(const LpBallData&) const {
      f.finite = yes();
      f.weakly = yes();
      f.reversible = yes();
      f.quasi_known = true;
      f.quasi = 1.0;
    }
    void operator()(const LinearImageData& d) const {
      // every classification quantity is invariant under an invertible linear
      // change of variables
      WeakNorm inner = WeakNorm::from_body(*d.inner);
      AnalyticFlags g = analytic_flags(inner);
      f.finite = g.finite;
      f.weakly = g.weakly;
      f.reversible = g.reversible;
      f.quasi_known = g.quasi_known;
      f.quasi = g.quasi;
    }
  };
  std::visit(V{f, *body}, body->payload());
  return f;
}

struct SphereStats {
  double min_value = kInf;
  double min_pair_max = kInf;
  double max_abs_diff = 0.0;
  double max_ratio = 1.0;
  bool any_inf = false;
};

SphereStats sphere_scan(const WeakNorm& norm, const SamplingPlan& plan) {
  int n = norm.dim();
  double eps = plan.eps_num;
  auto fold = [&](SphereStats& s, std::int64_t i) {
    Vec u = rng::sphere(plan.seed, static_cast<std::uint64_t>(i), n);
    double fp = norm(u);
    double fm = norm(scale(u, -1.0));
    if (std::isinf(fp) || std::isinf(fm)) s.any_inf = true;
    s.min_value = std::min({s.min_value, fp, fm});
    s.min_pair_max = std::min(s.min_pair_max, std::max(fp, fm));
    double diff = (std::isinf(fp) && std::isinf(fm)) ? 0.0 : std::fabs(fp - fm);
    s.max_abs_diff = std::max(s.max_abs_diff, diff);
    for (auto [va, vb] : {std::pair{fp, fm}, std::pair{fm, fp}}) {
      // ratio vb/va contributes to the least C with F(-x) <= C F(x)
      if (va > eps)
        s.max_ratio = std::max(s.max_ratio, vb / va);
      else if (vb > eps)
        s.max_ratio = kInf;
    }
  };
  auto merge = [](SphereStats& a, const SphereStats& b) {
    a.min_value = std::min(a.min_value, b.min_value);
    a.min_pair_max = std::min(a.min_pair_max, b.min_pair_max);
    a.max_abs_diff = std::max(a.max_abs_diff, b.max_abs_diff);
    a.max_ratio = std::max(a.max_ratio, b.max_ratio);
    a.any_inf = a.any_inf || b.any_inf;
  };
  return parallel_reduce<SphereStats>(plan.count, plan.threads, SphereStats{}, fold, merge);
}

}  // namespace

NormClassification classify_norm(const WeakNorm& norm, const SamplingPlan& plan) {
  int n = norm.dim();
  if (plan.count < 2 * n)
    fail_domain("classify_norm: plan is under-determined (need at least 2*dim samples)");

  AnalyticFlags an = analytic_flags(norm);
  NormClassification cls;
  cls.seed = plan.seed;
  cls.samples = plan.count;
  bool need_sampling = !(an.finite.known && an.separating.known && an.weakly.known &&
                         an.reversible.known && an.quasi_known);
  cls.analytic = !need_sampling;

  SphereStats st;
  if (need_sampling) st = sphere_scan(norm, plan);

  double eps = plan.eps_num;
  cls.finite = an.finite.known ? an.finite.value : !st.any_inf;
  cls.separating = an.separating.known ? an.separating.value : st.min_value > eps;
  cls.weakly_separating = an.weakly.known ? an.weakly.value : st.min_pair_max > eps;
  cls.reversible = an.reversible.known ? an.reversible.value : st.max_abs_diff <= eps;
  cls.quasi_constant = an.quasi_known ? an.quasi : st.max_ratio;

  // forced consistency: reversible norms have C = 1, separating implies weak
  if (cls.reversible) cls.quasi_constant = 1.0;
  if (cls.separating) cls.weakly_separating = true;
  return cls;
}

std::optional<Vec> indicatrix_point(const WeakNorm& norm, const Vec& direction) {
  double f = norm(direction);
  if (f <= 0.0 || std::isinf(f)) return std::nullopt;
  return scale(direction, 1.0 / f);
}

namespace {

std::vector<Vec> grid_directions(int dim, int resolution) {
  std::vector<Vec> dirs;
  dirs.reserve(resolution);
  if (dim == 2) {
    for (int k = 0; k < resolution; ++k) {
      double th = 2.0 * kPi * k / resolution;
      dirs.push_back({std::cos(th), std::sin(th)});
    }
  } else {
    // Fibonacci sphere
    const double golden = 2.39996322972865332;  // 2*pi*(1 - 1/phi)
    for (int k = 0; k < resolution; ++k) {
      double z = 1.0 - 2.0 * (k + 0.5) / resolution;
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double th = golden * k;
      dirs.push_back({r * std::cos(th), r * std::sin(th), z});
    }
  }
  return dirs;
}

}  // namespace

std::pair<double, double> euclidean_sandwich(const WeakNorm& norm, const SamplingPlan& plan) {
  int n = norm.dim();
  NormClassification cls = classify_norm(norm, plan);
  if (!cls.finite || !cls.separating)
    fail_domain("euclidean_sandwich: norm must be finite and separating");

  double lo = kInf, hi = 0.0;
  if (n == 2) {
    int res = std::max(plan.count, 4096);
    for (const Vec& u : grid_directions(2, res)) {
      double f = norm(u);
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
  } else {
    for (int i = 0; i < plan.count; ++i) {
      double f = norm(rng::sphere(plan.seed, i, n));
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
  }
  double mu = lo * (1.0 - 1e-6);

  // fresh draws must fall inside the reported sandwich
  for (int i = 0; i < plan.count; ++i) {
    Vec u = rng::sphere(plan.seed + 0x5157, i, n);
    double f = norm(u);
    if (f < mu || f > hi * (1.0 + 1e-6))
      fail_numeric("euclidean_sandwich: fresh samples escape the estimated constants");
  }
  return {mu, hi};
}

std::vector<Vec> reconstruct_ball(const WeakNorm& norm, int resolution) {
  int n = norm.dim();
  if (n != 2 && n != 3) fail_domain("reconstruct_ball: only dimensions 2 and 3 are supported");
  if (resolution < 3) fail_domain("reconstruct_ball: resolution must be at least 3");
  std::vector<Vec> pts;
  pts.reserve(resolution);
  for (const Vec& u : grid_directions(n, resolution))
    if (auto p = indicatrix_point(norm, u)) pts.push_back(*p);
  return pts;
}

}  // namespace minkgeo
