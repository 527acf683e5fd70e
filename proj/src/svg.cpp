#include "minkgeo/svg.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "minkgeo/error.hpp"
#include "minkgeo/projective.hpp"

namespace minkgeo {
namespace {

std::string fixed6(double v) {
  if (v == 0.0) v = 0.0;  // flush -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::vector<Vec> boundary_curve(const ConvexBody& body, int directions) {
  Vec zero(2, 0.0);
  std::vector<Vec> pts;
  pts.reserve(directions);
  for (int k = 0; k < directions; ++k) {
    double a = 2.0 * kPi * static_cast<double>(k) / directions;
    Vec u = {std::cos(a), std::sin(a)};
    double t = ray_boundary(body, zero, u);
    pts.push_back(scale(u, t));
  }
  return pts;
}

std::vector<Vec> ball_curve(const ConvexBody& body, const Vec& center, double radius,
                            bool hilbert, int directions) {
  std::vector<Vec> pts;
  pts.reserve(directions);
  for (int k = 0; k < directions; ++k) {
    double a = 2.0 * kPi * static_cast<double>(k) / directions;
    Vec u = {std::cos(a), std::sin(a)};
    double s = hilbert ? hilbert_ball_radius(body, center, u, radius)
                       : funk_ball_radius(body, center, u, radius);
    pts.push_back(add(center, scale(u, s)));
  }
  return pts;
}

}  // namespace

std::string render_svg(const ConvexBody& body, const RenderOptions& options) {
  if (body.dim() != 2) fail_domain("rendering supports dimension 2 only");
  if (options.directions < 3) fail_schema("render needs at least 3 directions");
  if (recession_ray(body)) fail_domain("rendering requires a bounded body");
  Vec center = options.ball_center;
  if (center.empty()) center = Vec(2, 0.0);
  if (center.size() != 2) fail_schema("ball center must be a 2-vector");

  struct Path {
    std::vector<Vec> pts;
    const char* stroke;
    const char* dash;  // nullptr = solid
  };
  std::vector<Path> paths;
  paths.push_back({boundary_curve(body, options.directions), "#1a1a1a", nullptr});
  if (options.indicatrix)
    paths.push_back({boundary_curve(body, options.directions), "#2b6cb0", "6,4"});
  if (options.funk_radius)
    paths.push_back(
        {ball_curve(body, center, *options.funk_radius, false, options.directions),
         "#c05621", nullptr});
  if (options.hilbert_radius)
    paths.push_back(
        {ball_curve(body, center, *options.hilbert_radius, true, options.directions),
         "#2f855a", nullptr});

  double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
  for (const Path& p : paths)
    for (const Vec& v : p.pts) {
      xmin = std::min(xmin, v[0]);
      xmax = std::max(xmax, v[0]);
      ymin = std::min(ymin, v[1]);
      ymax = std::max(ymax, v[1]);
    }
  double spanx = std::max(xmax - xmin, 1e-9);
  double spany = std::max(ymax - ymin, 1e-9);
  double usable = 1.0 - 2.0 * options.margin;
  double sc = std::min(options.width * usable / spanx, options.height * usable / spany);
  double offx = 0.5 * options.width - sc * 0.5 * (xmin + xmax);
  double offy = 0.5 * options.height + sc * 0.5 * (ymin + ymax);

  auto px = [&](const Vec& v) {
    return fixed6(offx + sc * v[0]) + "," + fixed6(offy - sc * v[1]);
  };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         fixed6(options.width) + "\" height=\"" + fixed6(options.height) + "\" viewBox=\"0 0 " +
         fixed6(options.width) + " " + fixed6(options.height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  for (const Path& p : paths) {
    out += "<path d=\"M " + px(p.pts[0]);
    for (std::size_t i = 1; i < p.pts.size(); ++i) out += " L " + px(p.pts[i]);
    out += " Z\" fill=\"none\" stroke=\"";
    out += p.stroke;
    out += "\" stroke-width=\"2\"";
    if (p.dash) {
      out += " stroke-dasharray=\"";
      out += p.dash;
      out += "\"";
    }
    out += "/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace minkgeo
