#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "minkgeo/linalg.hpp"
#include "minkgeo/util.hpp"

namespace minkgeo {

// Convex bodies are star-shaped about the origin by construction: hpolytope
// offsets are nonnegative and vpolytopes must contain the origin. The gauge
// F(x) = inf{t >= 0 : x in t*body} is then well defined with values in
// [0, +inf].

struct HPolytopeData {
  std::vector<Vec> normals;
  Vec offsets;
};

struct VPolytopeData {
  std::vector<Vec> vertices;
  std::vector<Vec> rays;
};

struct EllipsoidData {
  Mat shape;  // symmetric positive definite; body = {x : x'Qx <= 1}
};

struct LpBallData {
  double p = 2.0;  // >= 1
  Vec semiaxes;    // all > 0
};

class ConvexBody;

struct LinearImageData {
  Mat transform;
  Mat inverse;  // cached at construction
  std::shared_ptr<const ConvexBody> inner;
};

class ConvexBody {
 public:
  using Payload = std::variant<HPolytopeData, VPolytopeData, EllipsoidData, LpBallData, LinearImageData>;

  static ConvexBody hpolytope(std::vector<Vec> normals, Vec offsets);
  static ConvexBody vpolytope(std::vector<Vec> vertices, std::vector<Vec> rays = {});
  static ConvexBody ellipsoid(Mat shape);
  static ConvexBody lp_ball(double p, Vec semiaxes);
  static ConvexBody linear_image(Mat transform, ConvexBody inner);

  int dim() const { return dim_; }
  const Payload& payload() const { return *payload_; }
  const char* kind() const;

 private:
  ConvexBody(std::shared_ptr<const Payload> payload, int dim)
      : payload_(std::move(payload)), dim_(dim) {}

  std::shared_ptr<const Payload> payload_;
  int dim_ = 0;
};

using BodyPtr = std::shared_ptr<const ConvexBody>;

ConvexBody parse_body(const std::string& json_text);
std::string body_to_json_string(const ConvexBody& body);

double gauge(const ConvexBody& body, const Vec& x);

// min sum(lambda) with sum(lambda_i v_i) + sum(rho_j r_j) = x, lambda,rho >= 0;
// +inf when infeasible. This is the vpolytope gauge.
double lp_minsum(const std::vector<Vec>& vertices, const std::vector<Vec>& rays, const Vec& x);

// sup{t >= 0 : base + t*dir in closure(body)} for unit dir and interior base
// (or base = 0). +inf along recession directions.
double ray_boundary(const ConvexBody& body, const Vec& base, const Vec& dir,
                    double eps_root = kEpsRoot);

// A unit vector spanning a ray contained in the body, when one exists. Present
// if and only if the body is unbounded.
std::optional<Vec> recession_ray(const ConvexBody& body);

}  // namespace minkgeo
