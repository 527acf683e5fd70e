#pragma once

#include <optional>
#include <string>

#include "minkgeo/body.hpp"

namespace minkgeo {

struct RenderOptions {
  int directions = 360;
  double width = 640.0;
  double height = 640.0;
  double margin = 0.08;  // fraction of the drawing area kept clear
  bool indicatrix = true;
  Vec ball_center;  // defaults to the origin when empty
  std::optional<double> funk_radius;
  std::optional<double> hilbert_radius;
};

// 2D only. Draws the body boundary, the indicatrix of its gauge, and optional
// Funk/Hilbert balls as sampled polylines. Output bytes are deterministic:
// fixed 6-decimal formatting, no timestamps.
std::string render_svg(const ConvexBody& body, const RenderOptions& options);

}  // namespace minkgeo
