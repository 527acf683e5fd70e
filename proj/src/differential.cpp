#include "minkgeo/differential.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <variant>

#include "minkgeo/error.hpp"
#include "minkgeo/rng.hpp"
#include "minkgeo/util.hpp"

namespace minkgeo {
namespace {

constexpr double kStrongEig = 1e-3;
constexpr double kDegenerateEig = 1e-6;

double eval_finite(const WeakNorm& norm, const Vec& x) {
  double v = norm(x);
  if (std::isinf(v)) fail_domain("infinite value in the difference stencil");
  return v;
}

// The shape matrix of F^2 when the gauge is an exact quadratic form:
// ellipsoids, p=2 balls, and invertible images thereof.
std::optional<Mat> effective_quadratic(const ConvexBody& body) {
  if (const auto* e = std::get_if<EllipsoidData>(&body.payload())) return e->shape;
  if (const auto* d = std::get_if<LpBallData>(&body.payload())) {
    if (d->p != 2.0) return std::nullopt;
    int n = body.dim();
    Mat q(n, n);
    for (int i = 0; i < n; ++i) q(i, i) = 1.0 / (d->semiaxes[i] * d->semiaxes[i]);
    return q;
  }
  if (const auto* d = std::get_if<LinearImageData>(&body.payload())) {
    auto inner = effective_quadratic(*d->inner);
    if (!inner) return std::nullopt;
    Mat bt = transpose(d->inverse);
    return matmul(bt, matmul(*inner, d->inverse));
  }
  return std::nullopt;
}

double default_h1(const Vec& y) { return 1e-5 * (1.0 + norm2(y)); }
double default_h2(const Vec& y) { return 1e-3 * (1.0 + norm2(y)); }

void check_base(const Vec& y, double h) {
  if (norm2(y) <= 10.0 * h)
    fail_domain("base point too close to the origin for the difference step");
}

}  // namespace

Vec fd_gradient(const WeakNorm& norm, const Vec& y, double h) {
  int n = norm.dim();
  if (static_cast<int>(y.size()) != n) fail_schema("point dimension mismatch");
  if (h <= 0.0) h = default_h1(y);
  check_base(y, h);
  Vec g(n);
  Vec probe = y;
  for (int i = 0; i < n; ++i) {
    probe[i] = y[i] + h;
    double fp = eval_finite(norm, probe);
    probe[i] = y[i] - h;
    double fm = eval_finite(norm, probe);
    probe[i] = y[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

TensorAtPoint fundamental_tensor(const WeakNorm& norm, const Vec& y, double h) {
  int n = norm.dim();
  if (static_cast<int>(y.size()) != n) fail_schema("point dimension mismatch");
  TensorAtPoint out;
  out.base = y;

  if (norm.body()) {
    if (auto q = effective_quadratic(*norm.body())) {
      out.matrix = *q;
      out.method = "analytic";
      out.min_eigenvalue = jacobi_eigensystem(out.matrix).values.front();
      return out;
    }
  }

  if (h <= 0.0) h = default_h2(y);
  check_base(y, h);
  auto g2 = [&](const Vec& x) {
    double f = eval_finite(norm, x);
    return f * f;
  };

  double f0 = eval_finite(norm, y);
  Mat m(n, n);
  Vec probe = y;
  double g0 = f0 * f0;
  for (int i = 0; i < n; ++i) {
    probe[i] = y[i] + h;
    double gp = g2(probe);
    double fp = eval_finite(norm, probe);
    probe[i] = y[i] - h;
    double gm = g2(probe);
    double fm = eval_finite(norm, probe);
    probe[i] = y[i];
    m(i, i) = 0.5 * (gp - 2.0 * g0 + gm) / (h * h);
    double dplus = (fp - f0) / h;
    double dminus = (f0 - fm) / h;
    if (std::abs(dplus - dminus) > 1e-3 * (1.0 + f0)) out.nonsmooth_warning = true;
    for (int j = i + 1; j < n; ++j) {
      probe[i] = y[i] + h;
      probe[j] = y[j] + h;
      double gpp = g2(probe);
      probe[j] = y[j] - h;
      double gpm = g2(probe);
      probe[i] = y[i] - h;
      double gmm = g2(probe);
      probe[j] = y[j] + h;
      double gmp = g2(probe);
      probe[i] = y[i];
      probe[j] = y[j];
      double mixed = 0.5 * (gpp - gpm - gmp + gmm) / (4.0 * h * h);
      m(i, j) = mixed;
      m(j, i) = mixed;
    }
  }
  // Enforce exact symmetry; the cross stencil is symmetric up to round-off.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double s = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = s;
      m(j, i) = s;
    }
  out.matrix = m;
  out.method = "finite-difference";
  out.step = h;
  out.min_eigenvalue = jacobi_eigensystem(m).values.front();
  return out;
}

double euler_residual(const WeakNorm& norm, const Vec& y) {
  Vec g = fd_gradient(norm, y);
  return dot(y, g) - eval_finite(norm, y);
}

double recover_norm(const WeakNorm& norm, const Vec& y) {
  TensorAtPoint t = fundamental_tensor(norm, y);
  double q = dot(y, matvec(t.matrix, y));
  if (q < 0.0)
    fail_numeric("quadratic value negative; the tensor is unreliable at this point");
  return std::sqrt(q);
}

double homothety_invariance(const WeakNorm& norm, const Vec& y, double lambda) {
  if (!(lambda >= 0.1 && lambda <= 10.0)) fail_schema("lambda must lie in [0.1, 10]");
  TensorAtPoint a = fundamental_tensor(norm, y);
  TensorAtPoint b = fundamental_tensor(norm, scale(y, lambda));
  return max_abs_diff(a.matrix, b.matrix);
}

namespace {

bool on_unit_sphere(const WeakNorm& f, const Vec& x, double tol) {
  double v = f(x);
  return std::isfinite(v) && std::abs(v - 1.0) <= tol;
}

std::optional<std::pair<Vec, Vec>> polytope_facet_segment(const ConvexBody& body,
                                                          const WeakNorm& f) {
  int n = body.dim();
  if (n < 2) return std::nullopt;
  const auto& data = std::get<HPolytopeData>(body.payload());
  int m = static_cast<int>(data.normals.size());
  for (int i = 0; i < m; ++i) {
    const Vec& a = data.normals[i];
    if (data.offsets[i] <= 0.0) continue;
    double fa = f(a);
    if (!std::isfinite(fa) || fa <= 0.0) continue;
    Vec p = scale(a, 1.0 / fa);
    if (std::abs(dot(a, p) - data.offsets[i]) > 1e-9 * (1.0 + std::abs(data.offsets[i])))
      continue;  // this facet is not the active one in its own normal direction
    // Tangent inside the facet: project out the normal from the flattest axis.
    double na = dot(a, a);
    int axis = 0;
    for (int j = 1; j < n; ++j)
      if (std::abs(a[j]) < std::abs(a[axis])) axis = j;
    Vec tau(n, 0.0);
    tau[axis] = 1.0;
    tau = sub(tau, scale(a, a[axis] / na));
    double tn = norm2(tau);
    if (tn <= 1e-12) continue;
    tau = scale(tau, 1.0 / tn);
    double eps = 0.5 * (1.0 + norm2(p));
    for (int half = 0; half < 60; ++half) {
      Vec p1 = add(p, scale(tau, eps));
      Vec p2 = sub(p, scale(tau, eps));
      if (on_unit_sphere(f, p1, 1e-9) && on_unit_sphere(f, p2, 1e-9))
        return std::make_pair(p1, p2);
      eps *= 0.5;
    }
  }
  return std::nullopt;
}

std::optional<std::pair<Vec, Vec>> vertex_pair_segment(const ConvexBody& body,
                                                       const WeakNorm& f) {
  const auto& data = std::get<VPolytopeData>(body.payload());
  int v = static_cast<int>(data.vertices.size());
  for (int i = 0; i < v; ++i) {
    const Vec& vi = data.vertices[i];
    if (!on_unit_sphere(f, vi, 1e-9)) continue;
    for (int j = i + 1; j < v; ++j) {
      const Vec& vj = data.vertices[j];
      if (norm2(sub(vi, vj)) <= 1e-9) continue;
      if (!on_unit_sphere(f, vj, 1e-9)) continue;
      Vec mid = scale(add(vi, vj), 0.5);
      if (on_unit_sphere(f, mid, 1e-9)) return std::make_pair(vi, vj);
    }
  }
  return std::nullopt;
}

ConvexityClass sampled_classification(const ConvexBody& body, const WeakNorm& f,
                                      const SamplingPlan& plan) {
  int n = body.dim();
  ConvexityClass out;

  struct SegLocal {
    bool found = false;
    std::int64_t idx = std::numeric_limits<std::int64_t>::max();
    Vec p, q;
  };
  std::int64_t pairs = std::min<std::int64_t>(plan.count, 400);
  SegLocal seg = parallel_reduce(
      pairs, plan.threads, SegLocal{},
      [&](SegLocal& loc, std::int64_t i) {
        if (loc.found && loc.idx < i) return;
        Vec u = rng::sphere(plan.seed, static_cast<std::uint64_t>(i), n, 0);
        Vec w = rng::sphere(plan.seed, static_cast<std::uint64_t>(i), n, 16);
        double fu = f(u), fw = f(w);
        if (!std::isfinite(fu) || !std::isfinite(fw) || fu <= 1e-12 || fw <= 1e-12) return;
        Vec p = scale(u, 1.0 / fu);
        Vec q = scale(w, 1.0 / fw);
        if (norm2(sub(p, q)) <= 1e-6) return;
        if (f(scale(add(p, q), 0.5)) >= 1.0 - 1e-9) {
          loc.found = true;
          loc.idx = i;
          loc.p = p;
          loc.q = q;
        }
      },
      [](SegLocal& into, const SegLocal& from) {
        if (from.found && (!into.found || from.idx < into.idx)) into = from;
      });
  if (seg.found) {
    out.kind = ConvexityKind::not_strictly_convex;
    out.segment = std::make_pair(seg.p, seg.q);
    out.detail = "sampled boundary pair with boundary midpoint";
    return out;
  }

  struct EigLocal {
    double eig = kInf;
    std::int64_t idx = std::numeric_limits<std::int64_t>::max();
    Vec base;
    std::int64_t warnings = 0;
  };
  std::int64_t sweeps = std::min<std::int64_t>(plan.count, 200);
  EigLocal ev = parallel_reduce(
      sweeps, plan.threads, EigLocal{},
      [&](EigLocal& loc, std::int64_t i) {
        Vec y = rng::sphere(plan.seed ^ 0x5bd1e995u, static_cast<std::uint64_t>(i), n, 0);
        TensorAtPoint t = fundamental_tensor(f, y);
        if (t.nonsmooth_warning) ++loc.warnings;
        if (t.min_eigenvalue < loc.eig ||
            (t.min_eigenvalue == loc.eig && i < loc.idx)) {
          loc.eig = t.min_eigenvalue;
          loc.idx = i;
          loc.base = y;
        }
      },
      [](EigLocal& into, const EigLocal& from) {
        into.warnings += from.warnings;
        if (from.eig < into.eig || (from.eig == into.eig && from.idx < into.idx)) {
          into.eig = from.eig;
          into.idx = from.idx;
          into.base = from.base;
        }
      });
  out.min_eigenvalue = ev.eig;
  if (ev.eig > kStrongEig) {
    out.kind = ConvexityKind::strongly_convex;
    out.detail = "sampled tensor sweep";
  } else if (ev.eig < kDegenerateEig) {
    out.kind = ConvexityKind::strictly_not_strongly;
    out.weak_direction = ev.base;
    out.detail = "tensor degenerates at the witness point";
  } else {
    out.kind = ConvexityKind::inconclusive;
    out.detail = "minimum tensor eigenvalue falls in the undecided band";
  }
  if (ev.warnings > sweeps / 2 && out.kind == ConvexityKind::strongly_convex) {
    out.kind = ConvexityKind::inconclusive;
    out.detail = "most sampled points look non-smooth; eigenvalues unreliable";
  }
  return out;
}

}  // namespace

ConvexityClass classify_convexity(const ConvexBody& body, const SamplingPlan& plan) {
  if (recession_ray(body)) fail_domain("convexity classification requires a bounded body");
  WeakNorm f = WeakNorm::from_body(body);
  int n = body.dim();
  ConvexityClass out;

  if (std::holds_alternative<HPolytopeData>(body.payload())) {
    if (auto seg = polytope_facet_segment(body, f)) {
      out.kind = ConvexityKind::not_strictly_convex;
      out.segment = seg;
      out.detail = "facet segment";
      return out;
    }
    return sampled_classification(body, f, plan);
  }
  if (std::holds_alternative<VPolytopeData>(body.payload())) {
    if (auto seg = vertex_pair_segment(body, f)) {
      out.kind = ConvexityKind::not_strictly_convex;
      out.segment = seg;
      out.detail = "edge between listed vertices";
      return out;
    }
    return sampled_classification(body, f, plan);
  }
  if (const auto* d = std::get_if<EllipsoidData>(&body.payload())) {
    out.kind = ConvexityKind::strongly_convex;
    out.min_eigenvalue = jacobi_eigensystem(d->shape).values.front();
    out.detail = "quadratic gauge";
    return out;
  }
  if (const auto* d = std::get_if<LpBallData>(&body.payload())) {
    if (n == 1 || d->p == 2.0) {
      out.kind = ConvexityKind::strongly_convex;
      double eig = kInf;
      for (double s : d->semiaxes) eig = std::min(eig, 1.0 / (s * s));
      out.min_eigenvalue = eig;
      out.detail = "quadratic gauge";
      return out;
    }
    if (d->p == 1.0) {
      out.kind = ConvexityKind::not_strictly_convex;
      Vec p1(n, 0.0), p2(n, 0.0);
      p1[0] = d->semiaxes[0];
      p2[1] = d->semiaxes[1];
      out.segment = std::make_pair(p1, p2);
      out.detail = "facet of the cross-polytope";
      return out;
    }
    out.kind = ConvexityKind::strictly_not_strongly;
    Vec axis(n, 0.0);
    axis[0] = d->semiaxes[0];
    out.weak_direction = axis;
    if (d->p > 2.0) {
      out.min_eigenvalue = fundamental_tensor(f, axis).min_eigenvalue;
      out.detail = "tensor degenerates at the coordinate axes";
    } else {
      out.min_eigenvalue = 0.0;
      out.detail = "second derivatives blow up at the coordinate axes";
    }
    return out;
  }
  if (std::holds_alternative<LinearImageData>(body.payload())) {
    if (auto q = effective_quadratic(body)) {
      out.kind = ConvexityKind::strongly_convex;
      out.min_eigenvalue = jacobi_eigensystem(*q).values.front();
      out.detail = "quadratic gauge";
      return out;
    }
  }
  return sampled_classification(body, f, plan);
}

}  // namespace minkgeo
