#include "minkgeo/ellipsoid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "minkgeo/error.hpp"
#include "minkgeo/rng.hpp"
#include "minkgeo/util.hpp"

namespace minkgeo {
namespace {

constexpr int kMveeCap = 100000;

std::string format_direction(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  os << ")";
  return os.str();
}

void check_affine_span(const std::vector<Vec>& points, int n) {
  std::size_t m = points.size();
  Vec mean(n, 0.0);
  for (const Vec& p : points) mean = add(mean, p);
  mean = scale(mean, 1.0 / static_cast<double>(m));
  Mat cov(n, n);
  for (const Vec& p : points) {
    Vec d = sub(p, mean);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) cov(i, j) += d[i] * d[j];
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cov(i, j) /= static_cast<double>(m);
  SymEigen eig = jacobi_eigensystem(cov);
  double top = std::max(1.0, eig.values.back());
  if (eig.values.front() <= 1e-12 * top) {
    Vec dir(n);
    for (int i = 0; i < n; ++i) dir[i] = eig.vectors(i, 0);
    fail_domain("degenerate point set: no affine span along " + format_direction(dir));
  }
}

}  // namespace

MveeResult mvee(const std::vector<Vec>& points, double eps) {
  if (points.empty()) fail_schema("mvee requires a nonempty point list");
  int n = static_cast<int>(points.front().size());
  if (n < 1) fail_schema("mvee points must have positive dimension");
  for (const Vec& p : points)
    if (static_cast<int>(p.size()) != n) fail_schema("mvee points must share one dimension");
  std::int64_t m = static_cast<std::int64_t>(points.size());
  if (m < n + 1) fail_domain("mvee requires at least n+1 points");
  if (!(eps > 0.0)) fail_schema("mvee eps must be positive");
  check_affine_span(points, n);

  int d = n + 1;
  std::vector<double> u(m, 1.0 / static_cast<double>(m));
  std::vector<double> w(m);
  MveeResult out;
  out.eps = eps;

  int it = 0;
  for (; it < kMveeCap; ++it) {
    Mat x(d, d);
    for (std::int64_t p = 0; p < m; ++p) {
      if (u[p] == 0.0) continue;
      const Vec& q = points[p];
      for (int i = 0; i < d; ++i) {
        double qi = i < n ? q[i] : 1.0;
        for (int j = 0; j < d; ++j) {
          double qj = j < n ? q[j] : 1.0;
          x(i, j) += u[p] * qi * qj;
        }
      }
    }
    Mat xinv = inverse(x);
    std::int64_t jmax = 0, jmin = -1;
    double kplus = -kInf, kminus = kInf;
    for (std::int64_t p = 0; p < m; ++p) {
      const Vec& q = points[p];
      double acc = 0.0;
      for (int i = 0; i < d; ++i) {
        double qi = i < n ? q[i] : 1.0;
        double row = 0.0;
        for (int j = 0; j < d; ++j) {
          double qj = j < n ? q[j] : 1.0;
          row += xinv(i, j) * qj;
        }
        acc += qi * row;
      }
      w[p] = acc;
      if (acc > kplus) {
        kplus = acc;
        jmax = p;
      }
      if (u[p] > 1e-14 && acc < kminus) {
        kminus = acc;
        jmin = p;
      }
    }
    out.gap = kplus / d - 1.0;
    if (out.gap <= eps) break;

    double alpha;
    std::int64_t pick;
    if (jmin < 0 || kplus - d >= d - kminus) {
      alpha = (kplus - d) / (d * (kplus - 1.0));
      pick = jmax;
    } else {
      alpha = (kminus - d) / (d * (kminus - 1.0));  // negative: move weight away
      alpha = std::max(alpha, -u[jmin] / (1.0 - u[jmin]));
      pick = jmin;
    }
    for (std::int64_t p = 0; p < m; ++p) u[p] *= (1.0 - alpha);
    u[pick] += alpha;
  }
  if (out.gap > eps) fail_numeric("mvee did not converge within the iteration cap");
  out.iterations = it;

  Vec c(n, 0.0);
  for (std::int64_t p = 0; p < m; ++p)
    for (int i = 0; i < n; ++i) c[i] += u[p] * points[p][i];
  Mat s(n, n);
  for (std::int64_t p = 0; p < m; ++p) {
    if (u[p] == 0.0) continue;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s(i, j) += u[p] * points[p][i] * points[p][j];
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(i, j) -= c[i] * c[j];
  Mat shape = inverse(s);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) shape(i, j) /= static_cast<double>(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double v = 0.5 * (shape(i, j) + shape(j, i));
      shape(i, j) = v;
      shape(j, i) = v;
    }
  out.ellipsoid.center = c;
  out.ellipsoid.shape = shape;
  return out;
}

Mat normalizer(const Ellipsoid& ell) { return sym_sqrt(ell.shape); }

namespace {

std::vector<Vec> icosphere(int level) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec> verts = {
      {-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0}, {0, -1, t},  {0, 1, t},
      {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (Vec& v : verts) v = normalized(v);
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Vec m = normalized(scale(add(verts[a], verts[b]), 0.5));
      verts.push_back(m);
      int idx = static_cast<int>(verts.size()) - 1;
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      int a = mid(f[0], f[1]), b = mid(f[1], f[2]), c = mid(f[2], f[0]);
      next.push_back({f[0], a, c});
      next.push_back({f[1], b, a});
      next.push_back({f[2], c, b});
      next.push_back({a, b, c});
    }
    faces.swap(next);
  }
  return verts;
}

}  // namespace

std::vector<Vec> boundary_cloud(const WeakNorm& norm, int resolution) {
  int n = norm.dim();
  std::vector<Vec> dirs;
  if (n == 2) {
    int res = resolution > 0 ? resolution : 720;
    if (res < 3) fail_schema("cloud resolution must be at least 3");
    dirs.reserve(res);
    for (int k = 0; k < res; ++k) {
      double a = 2.0 * kPi * static_cast<double>(k) / res;
      dirs.push_back({std::cos(a), std::sin(a)});
    }
  } else if (n == 3) {
    int level = 4;  // 2562 vertices
    if (resolution > 0) {
      level = 0;
      while (level < 6 && 10 * (1 << (2 * level)) + 2 < resolution) ++level;
    }
    dirs = icosphere(level);
  } else {
    int res = resolution > 0 ? resolution : 4096;
    dirs.reserve(res);
    for (int k = 0; k < res; ++k)
      dirs.push_back(rng::sphere(0x10c05u, static_cast<std::uint64_t>(k), n));
  }
  std::vector<Vec> cloud;
  cloud.reserve(dirs.size());
  for (const Vec& u : dirs) {
    double f = norm(u);
    if (!std::isfinite(f) || f <= 1e-12)
      fail_domain("boundary cloud requires a finite separating norm");
    cloud.push_back(scale(u, 1.0 / f));
  }
  return cloud;
}

ConjugationReport conjugate_to_orthogonal(const WeakNorm& norm, const LinearMapCandidate& g,
                                          const SamplingPlan& plan) {
  int n = norm.dim();
  if (g.matrix.rows != n || g.matrix.cols != n)
    fail_schema("candidate map must be square and match the norm dimension");
  if (std::abs(determinant(g.matrix)) <= 1e-12) fail_schema("candidate map is singular");
  for (int k = 0; k < 64; ++k) {
    double f = norm(rng::sphere(0xfacadeu, static_cast<std::uint64_t>(k), n));
    if (!std::isfinite(f) || f <= 1e-9)
      fail_domain("conjugation requires a finite separating norm");
  }

  struct Local {
    double worst = -1.0;
    std::int64_t idx = std::numeric_limits<std::int64_t>::max();
  };
  Local iso = parallel_reduce(
      plan.count, plan.threads, Local{},
      [&](Local& loc, std::int64_t i) {
        Vec x = rng::box_point(plan.seed, static_cast<std::uint64_t>(i), n,
                               plan.box_halfwidth, 0);
        Vec y = rng::box_point(plan.seed, static_cast<std::uint64_t>(i), n,
                               plan.box_halfwidth, 64);
        Vec dx = sub(y, x);
        double r = std::abs(norm(matvec(g.matrix, dx)) - norm(dx));
        if (r > loc.worst || (r == loc.worst && i < loc.idx)) {
          loc.worst = r;
          loc.idx = i;
        }
      },
      [](Local& into, const Local& from) {
        if (from.worst > into.worst || (from.worst == into.worst && from.idx < into.idx))
          into = from;
      });

  MveeResult mv = mvee(boundary_cloud(norm), 1e-7);
  Mat a = normalizer(mv.ellipsoid);
  Mat f = matmul(a, matmul(g.matrix, inverse(a)));

  ConjugationReport out;
  out.f = f;
  out.orth_residual = max_abs_diff(matmul(transpose(f), f), Mat::identity(n));
  out.isometry_residual = std::max(0.0, iso.worst);
  out.loewner = mv.ellipsoid;
  out.mvee_iterations = mv.iterations;
  return out;
}

EuclideanFit is_euclidean(const WeakNorm& norm, const SamplingPlan& plan) {
  int n = norm.dim();
  int k = n * (n + 1) / 2;
  std::int64_t m = std::max<std::int64_t>(plan.count, 2 * n * (n + 1));

  auto monomials = [n, k](const Vec& u) {
    Vec row(k);
    int c = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) row[c++] = (i == j) ? u[i] * u[i] : 2.0 * u[i] * u[j];
    return row;
  };

  Mat gram(k, k);
  Vec rhs(k, 0.0);
  for (std::int64_t s = 0; s < m; ++s) {
    Vec u = rng::sphere(plan.seed, static_cast<std::uint64_t>(s), n);
    double f = norm(u);
    if (!std::isfinite(f) || f <= 1e-12)
      fail_domain("euclidean detection requires a finite separating norm");
    Vec row = monomials(u);
    double y = f * f;
    for (int i = 0; i < k; ++i) {
      rhs[i] += row[i] * y;
      for (int j = 0; j < k; ++j) gram(i, j) += row[i] * row[j];
    }
  }
  Vec coef = solve(gram, rhs);
  Mat q(n, n);
  {
    int c = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        q(i, j) = coef[c];
        q(j, i) = coef[c];
        ++c;
      }
  }

  SymEigen eig = jacobi_eigensystem(q);
  bool spd = eig.values.front() > 1e-12 * std::max(1.0, std::abs(eig.values.back()));

  struct Local {
    double worst = -1.0;
    std::int64_t idx = std::numeric_limits<std::int64_t>::max();
    Vec dir;
  };
  std::uint64_t fresh = rng::mix(plan.seed ^ 0x1d872b41u);
  std::int64_t m2 = std::max<std::int64_t>(plan.count, 256);
  Local res = parallel_reduce(
      m2, plan.threads, Local{},
      [&](Local& loc, std::int64_t i) {
        Vec u = rng::sphere(fresh, static_cast<std::uint64_t>(i), n);
        double f = norm(u);
        if (!std::isfinite(f))
          fail_domain("euclidean detection requires a finite separating norm");
        double quad = dot(u, matvec(q, u));
        double r = std::abs(f * f - quad) / (1.0 + f * f);
        if (r > loc.worst || (r == loc.worst && i < loc.idx)) {
          loc.worst = r;
          loc.idx = i;
          loc.dir = u;
        }
      },
      [](Local& into, const Local& from) {
        if (from.worst > into.worst || (from.worst == into.worst && from.idx < into.idx))
          into = from;
      });

  EuclideanFit out;
  out.residual = std::max(0.0, res.worst);
  out.worst_direction = res.dir;
  if (spd && out.residual <= 1e-6) out.shape = q;
  return out;
}

}  // namespace minkgeo
