#include "minkgeo/body.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "minkgeo/error.hpp"
#include "minkgeo/lp.hpp"

namespace minkgeo {

namespace {

void check_dim(int n, const char* what) {
  if (n < 1) fail_schema(std::string(what) + ": dimension must be at least 1");
}

bool is_zero(const Vec& v) {
  for (double x : v)
    if (x != 0.0) return false;
  return true;
}

// feasibility of sum(lambda_i v_i) + sum(rho_j r_j) = target, sum(lambda) = 1
bool convex_cone_contains(const std::vector<Vec>& vertices, const std::vector<Vec>& rays,
                          const Vec& target) {
  int n = static_cast<int>(target.size());
  int mv = static_cast<int>(vertices.size());
  int mr = static_cast<int>(rays.size());
  Mat a(n + 1, mv + mr);
  for (int j = 0; j < mv; ++j) {
    for (int i = 0; i < n; ++i) a(i, j) = vertices[j][i];
    a(n, j) = 1.0;
  }
  for (int j = 0; j < mr; ++j)
    for (int i = 0; i < n; ++i) a(i, mv + j) = rays[j][i];
  Vec b = target;
  b.push_back(1.0);
  Vec c(mv + mr, 0.0);
  auto res = lp::solve(a, b, c, 20 * (mv + mr + n + 1));
  return res.status == lp::Status::optimal;
}

}  // namespace

const char* ConvexBody::kind() const {
  struct V {
    const char* operator()(const HPolytopeData&) const { return "hpolytope"; }
    const char* operator()(const VPolytopeData&) const { return "vpolytope"; }
    const char* operator()(const EllipsoidData&) const { return "ellipsoid"; }
    const char* operator()(const LpBallData&) const { return "lp_ball"; }
    const char* operator()(const LinearImageData&) const { return "linear_image"; }
  };
  return std::visit(V{}, *payload_);
}

ConvexBody ConvexBody::hpolytope(std::vector<Vec> normals, Vec offsets) {
  if (normals.empty()) fail_schema("hpolytope: needs at least one facet");
  int n = static_cast<int>(normals.front().size());
  check_dim(n, "hpolytope");
  if (normals.size() != offsets.size())
    fail_schema("hpolytope: normals and offsets must have equal length");
  for (size_t i = 0; i < normals.size(); ++i) {
    if (static_cast<int>(normals[i].size()) != n)
      fail_schema("hpolytope: normal " + std::to_string(i) + " has inconsistent dimension");
    if (is_zero(normals[i]))
      fail_schema("hpolytope: normal " + std::to_string(i) + " is the zero vector");
    if (!(offsets[i] >= 0.0))
      fail_schema("hpolytope: negative offset at index " + std::to_string(i) +
                  " (origin would fall outside)");
  }
  HPolytopeData d{std::move(normals), std::move(offsets)};
  return ConvexBody(std::make_shared<Payload>(std::move(d)), n);
}

ConvexBody ConvexBody::vpolytope(std::vector<Vec> vertices, std::vector<Vec> rays) {
  if (vertices.empty()) fail_schema("vpolytope: needs at least one vertex");
  int n = static_cast<int>(vertices.front().size());
  check_dim(n, "vpolytope");
  for (size_t i = 0; i < vertices.size(); ++i)
    if (static_cast<int>(vertices[i].size()) != n)
      fail_schema("vpolytope: vertex " + std::to_string(i) + " has inconsistent dimension");
  for (size_t i = 0; i < rays.size(); ++i) {
    if (static_cast<int>(rays[i].size()) != n)
      fail_schema("vpolytope: ray " + std::to_string(i) + " has inconsistent dimension");
    if (is_zero(rays[i])) fail_schema("vpolytope: ray " + std::to_string(i) + " is the zero vector");
  }
  if (!convex_cone_contains(vertices, rays, Vec(n, 0.0)))
    fail_schema("vpolytope: origin not contained in the body");
  VPolytopeData d{std::move(vertices), std::move(rays)};
  return ConvexBody(std::make_shared<Payload>(std::move(d)), n);
}

ConvexBody ConvexBody::ellipsoid(Mat shape) {
  int n = shape.rows;
  check_dim(n, "ellipsoid");
  if (shape.cols != n) fail_schema("ellipsoid: shape matrix must be square");
  double scale = max_abs(shape);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::fabs(shape(i, j) - shape(j, i)) > 1e-12 * std::max(1.0, scale))
        fail_schema("ellipsoid: shape matrix not symmetric");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double v = 0.5 * (shape(i, j) + shape(j, i));
      shape(i, j) = shape(j, i) = v;
    }
  SymEigen e = jacobi_eigensystem(shape);
  if (e.values.front() <= 1e-12 * std::max(1.0, e.values.back()))
    fail_schema("ellipsoid: shape matrix not positive definite");
  EllipsoidData d{std::move(shape)};
  return ConvexBody(std::make_shared<Payload>(std::move(d)), n);
}

ConvexBody ConvexBody::lp_ball(double p, Vec semiaxes) {
  int n = static_cast<int>(semiaxes.size());
  check_dim(n, "lp_ball");
  if (!(p >= 1.0) || !std::isfinite(p)) fail_schema("lp_ball: exponent must be a finite real >= 1");
  for (int i = 0; i < n; ++i)
    if (!(semiaxes[i] > 0.0))
      fail_schema("lp_ball: semiaxis " + std::to_string(i) + " must be positive");
  LpBallData d{p, std::move(semiaxes)};
  return ConvexBody(std::make_shared<Payload>(std::move(d)), n);
}

ConvexBody ConvexBody::linear_image(Mat transform, ConvexBody inner) {
  int n = inner.dim();
  if (transform.rows != n || transform.cols != n)
    fail_schema("linear_image: transform must be " + std::to_string(n) + "x" + std::to_string(n));
  double det = determinant(transform);
  if (std::fabs(det) <= 1e-12) fail_schema("linear_image: singular transform");
  Mat inv = inverse(transform);
  LinearImageData d{std::move(transform), std::move(inv),
                    std::make_shared<const ConvexBody>(std::move(inner))};
  return ConvexBody(std::make_shared<Payload>(std::move(d)), n);
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using nlohmann::ordered_json;

Vec parse_vec(const ordered_json& j, const std::string& path) {
  if (!j.is_array()) fail_schema(path + ": expected an array of numbers");
  Vec v;
  v.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) fail_schema(path + "[" + std::to_string(i) + "]: expected a number");
    v.push_back(j[i].get<double>());
  }
  return v;
}

std::vector<Vec> parse_vec_list(const ordered_json& j, const std::string& path) {
  if (!j.is_array()) fail_schema(path + ": expected an array of points");
  std::vector<Vec> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) out.push_back(parse_vec(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Mat parse_mat(const ordered_json& j, const std::string& path) {
  std::vector<Vec> rows = parse_vec_list(j, path);
  if (rows.empty()) fail_schema(path + ": matrix must be nonempty");
  Mat m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size())
      fail_schema(path + "[" + std::to_string(i) + "]: ragged matrix row");
    for (size_t k = 0; k < rows[i].size(); ++k) m(static_cast<int>(i), static_cast<int>(k)) = rows[i][k];
  }
  return m;
}

const ordered_json& need(const ordered_json& j, const char* field, const std::string& path) {
  auto it = j.find(field);
  if (it == j.end()) fail_schema(path + ": missing field \"" + field + "\"");
  return *it;
}

ConvexBody body_from_json(const ordered_json& j, const std::string& path) {
  if (!j.is_object()) fail_schema(path + ": expected an object");
  const ordered_json& t = need(j, "type", path);
  if (!t.is_string()) fail_schema(path + ".type: expected a string");
  std::string type = t.get<std::string>();
  try {
    if (type == "hpolytope") {
      return ConvexBody::hpolytope(parse_vec_list(need(j, "normals", path), path + ".normals"),
                                   parse_vec(need(j, "offsets", path), path + ".offsets"));
    }
    if (type == "vpolytope") {
      std::vector<Vec> rays;
      if (j.contains("rays")) rays = parse_vec_list(j["rays"], path + ".rays");
      return ConvexBody::vpolytope(parse_vec_list(need(j, "vertices", path), path + ".vertices"),
                                   std::move(rays));
    }
    if (type == "ellipsoid") {
      return ConvexBody::ellipsoid(parse_mat(need(j, "shape", path), path + ".shape"));
    }
    if (type == "lp_ball") {
      const ordered_json& p = need(j, "p", path);
      if (!p.is_number()) fail_schema(path + ".p: expected a number");
      return ConvexBody::lp_ball(p.get<double>(),
                                 parse_vec(need(j, "semiaxes", path), path + ".semiaxes"));
    }
    if (type == "linear_image") {
      ConvexBody inner = body_from_json(need(j, "inner", path), path + ".inner");
      return ConvexBody::linear_image(parse_mat(need(j, "transform", path), path + ".transform"),
                                      std::move(inner));
    }
  } catch (const Error& e) {
    if (e.kind() == "schema" && std::string(e.what()).rfind(path, 0) != 0)
      fail_schema(path + ": " + e.what());
    throw;
  }
  fail_schema(path + ".type: unknown body type \"" + type + "\"");
}

ordered_json vec_to_json(const Vec& v) { return ordered_json(v); }

ordered_json mat_to_json(const Mat& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows; ++i) {
    ordered_json r = ordered_json::array();
    for (int j = 0; j < m.cols; ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

ordered_json body_to_json(const ConvexBody& body) {
  ordered_json j;
  j["type"] = body.kind();
  struct V {
    ordered_json& j;
    void operator()(const HPolytopeData& d) const {
      ordered_json normals = ordered_json::array();
      for (const Vec& n : d.normals) normals.push_back(vec_to_json(n));
      j["normals"] = std::move(normals);
      j["offsets"] = vec_to_json(d.offsets);
    }
    void operator()(const VPolytopeData& d) const {
      ordered_json verts = ordered_json::array();
      for (const Vec& v : d.vertices) verts.push_back(vec_to_json(v));
      j["vertices"] = std::move(verts);
      if (!d.rays.empty()) {
        ordered_json rays = ordered_json::array();
        for (const Vec& r : d.rays) rays.push_back(vec_to_json(r));
        j["rays"] = std::move(rays);
      }
    }
    void operator()(const EllipsoidData& d) const { j["shape"] = mat_to_json(d.shape); }
    void operator()(const LpBallData& d) const {
      j["p"] = d.p;
      j["semiaxes"] = vec_to_json(d.semiaxes);
    }
    void operator()(const LinearImageData& d) const {
      j["transform"] = mat_to_json(d.transform);
      j["inner"] = body_to_json(*d.inner);
    }
  };
  std::visit(V{j}, body.payload());
  return j;
}

}  // namespace

ConvexBody parse_body(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    fail_schema(std::string("body JSON does not parse: ") + e.what());
  }
  return body_from_json(j, "$");
}

std::string body_to_json_string(const ConvexBody& body) { return body_to_json(body).dump(); }

// ---------------------------------------------------------------------------
// gauge

namespace {

double gauge_hpolytope(const HPolytopeData& d, const Vec& x) {
  double acc = 0.0;
  for (size_t i = 0; i < d.normals.size(); ++i) {
    double num = dot(d.normals[i], x);
    double b = d.offsets[i];
    if (b > 0.0) {
      double q = num / b;
      if (q > acc) acc = q;
    } else if (num > 0.0) {
      return kInf;  // boundary facet through the origin blocks this halfspace
    }
  }
  return acc;
}

double gauge_lp_ball(const LpBallData& d, const Vec& x) {
  double accp = 0.0;
  if (d.p == 1.0) {
    for (size_t i = 0; i < x.size(); ++i) accp += std::fabs(x[i] / d.semiaxes[i]);
    return accp;
  }
  // scale out the largest ratio to dodge overflow for large p
  double peak = 0.0;
  for (size_t i = 0; i < x.size(); ++i) peak = std::max(peak, std::fabs(x[i] / d.semiaxes[i]));
  if (peak == 0.0) return 0.0;
  for (size_t i = 0; i < x.size(); ++i)
    accp += std::pow(std::fabs(x[i] / d.semiaxes[i]) / peak, d.p);
  return peak * std::pow(accp, 1.0 / d.p);
}

}  // namespace

double lp_minsum(const std::vector<Vec>& vertices, const std::vector<Vec>& rays, const Vec& x) {
  int n = static_cast<int>(x.size());
  int mv = static_cast<int>(vertices.size());
  int mr = static_cast<int>(rays.size());
  Mat a(n, mv + mr);
  for (int j = 0; j < mv; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = vertices[j][i];
  for (int j = 0; j < mr; ++j)
    for (int i = 0; i < n; ++i) a(i, mv + j) = rays[j][i];
  Vec c(mv + mr, 0.0);
  for (int j = 0; j < mv; ++j) c[j] = 1.0;
  auto res = lp::solve(a, x, c, 10 * (mv + mr + n));
  switch (res.status) {
    case lp::Status::optimal:
      return std::max(0.0, res.objective);
    case lp::Status::infeasible:
      return kInf;
    case lp::Status::unbounded:
      fail_numeric("vertex-combination program unbounded (inconsistent input)");
    case lp::Status::iteration_limit:
      fail_numeric("vertex-combination program hit its pivot cap (degenerate input)");
  }
  return kInf;
}

double gauge(const ConvexBody& body, const Vec& x) {
  if (static_cast<int>(x.size()) != body.dim()) fail_domain("gauge: point has wrong dimension");
  struct V {
    const Vec& x;
    double operator()(const HPolytopeData& d) const { return gauge_hpolytope(d, x); }
    double operator()(const VPolytopeData& d) const { return lp_minsum(d.vertices, d.rays, x); }
    double operator()(const EllipsoidData& d) const {
      return std::sqrt(std::max(0.0, dot(x, matvec(d.shape, x))));
    }
    double operator()(const LpBallData& d) const { return gauge_lp_ball(d, x); }
    double operator()(const LinearImageData& d) const { return gauge(*d.inner, matvec(d.inverse, x)); }
  };
  return std::visit(V{x}, body.payload());
}

// ---------------------------------------------------------------------------
// ray_boundary

namespace {

double ray_boundary_hpolytope(const HPolytopeData& d, const Vec& base, const Vec& dir) {
  double t = kInf;
  for (size_t i = 0; i < d.normals.size(); ++i) {
    double ad = dot(d.normals[i], dir);
    if (ad > 0.0) {
      double bound = (d.offsets[i] - dot(d.normals[i], base)) / ad;
      t = std::min(t, std::max(bound, 0.0));
    }
  }
  return t;
}

double ray_boundary_ellipsoid(const EllipsoidData& d, const Vec& base, const Vec& dir) {
  Vec qd = matvec(d.shape, dir);
  double alpha = dot(dir, qd);
  double beta = dot(base, qd);
  double gamma = dot(base, matvec(d.shape, base)) - 1.0;
  double disc = beta * beta - alpha * gamma;
  if (disc < 0.0) disc = 0.0;
  return (-beta + std::sqrt(disc)) / alpha;
}

// membership interval {t >= 0 : gauge(base + t dir) <= 1} is [0, t*]; doubling
// bracket then bisection to width eps_root * (1 + t*)
double ray_boundary_bisect(const ConvexBody& body, const Vec& base, const Vec& dir,
                           double eps_root) {
  auto inside = [&](double t) { return gauge(body, add(base, scale(dir, t))) <= 1.0; };
  double lo = 0.0, hi = 1.0;
  while (inside(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e15) return kInf;
  }
  while (hi - lo > eps_root * (1.0 + hi)) {
    double mid = 0.5 * (lo + hi);
    if (inside(mid))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double ray_boundary(const ConvexBody& body, const Vec& base, const Vec& dir, double eps_root) {
  if (static_cast<int>(base.size()) != body.dim() || static_cast<int>(dir.size()) != body.dim())
    fail_domain("ray_boundary: dimension mismatch");
  if (std::fabs(norm2(dir) - 1.0) > 1e-9) fail_domain("ray_boundary: direction must be a unit vector");
  bool at_origin = is_zero(base);
  if (!at_origin && !(gauge(body, base) < 1.0))
    fail_domain("ray_boundary: base point not interior to the body");
  if (at_origin) {
    double f = gauge(body, dir);
    if (f == 0.0) return kInf;
    if (f == kInf) return 0.0;
    return 1.0 / f;  // exact by homogeneity
  }
  struct V {
    const ConvexBody& body;
    const Vec& base;
    const Vec& dir;
    double eps_root;
    double operator()(const HPolytopeData& d) const { return ray_boundary_hpolytope(d, base, dir); }
    double operator()(const EllipsoidData& d) const { return ray_boundary_ellipsoid(d, base, dir); }
    double operator()(const VPolytopeData&) const { return ray_boundary_bisect(body, base, dir, eps_root); }
    double operator()(const LpBallData&) const { return ray_boundary_bisect(body, base, dir, eps_root); }
    double operator()(const LinearImageData&) const { return ray_boundary_bisect(body, base, dir, eps_root); }
  };
  return std::visit(V{body, base, dir, eps_root}, body.payload());
}

// ---------------------------------------------------------------------------
// recession_ray

namespace {

// feasibility of {a_i . u <= 0, u_k = sign, -1 <= u_j <= 1} via phase-1 simplex
std::optional<Vec> hpolytope_recession_trial(const HPolytopeData& d, int n, int k, double sign) {
  int m = static_cast<int>(d.normals.size());
  // variables: up[n], un[n], slack[m], boxp[n], boxn[n]
  int cols = 2 * n + m + 2 * n;
  int rows = m + 2 * n + 1;
  Mat a(rows, cols);
  Vec b(rows, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      a(i, j) = d.normals[i][j];
      a(i, n + j) = -d.normals[i][j];
    }
    a(i, 2 * n + i) = 1.0;
  }
  for (int j = 0; j < n; ++j) {
    a(m + j, j) = 1.0;
    a(m + j, 2 * n + m + j) = 1.0;
    b[m + j] = 1.0;
    a(m + n + j, n + j) = 1.0;
    a(m + n + j, 2 * n + m + n + j) = 1.0;
    b[m + n + j] = 1.0;
  }
  a(m + 2 * n, k) = 1.0;
  a(m + 2 * n, n + k) = -1.0;
  b[m + 2 * n] = sign;
  Vec c(cols, 0.0);
  auto res = lp::solve(a, b, c, 20 * (cols + rows));
  if (res.status != lp::Status::optimal) return std::nullopt;
  Vec u(n);
  for (int j = 0; j < n; ++j) u[j] = res.x[j] - res.x[n + j];
  return normalized(u);
}

}  // namespace

std::optional<Vec> recession_ray(const ConvexBody& body) {
  int n = body.dim();
  struct V {
    int n;
    std::optional<Vec> operator()(const HPolytopeData& d) const {
      for (int k = 0; k < n; ++k)
        for (double sign : {1.0, -1.0})
          if (auto u = hpolytope_recession_trial(d, n, k, sign)) return u;
      return std::nullopt;
    }
    std::optional<Vec> operator()(const VPolytopeData& d) const {
      if (d.rays.empty()) return std::nullopt;
      return normalized(d.rays.front());
    }
    std::optional<Vec> operator()(const EllipsoidData&) const { return std::nullopt; }
    std::optional<Vec> operator()(const LpBallData&) const { return std::nullopt; }
    std::optional<Vec> operator()(const LinearImageData& d) const {
      auto u = recession_ray(*d.inner);
      if (!u) return std::nullopt;
      return normalized(matvec(d.transform, *u));
    }
  };
  return std::visit(V{n}, body.payload());
}

}  // namespace minkgeo
