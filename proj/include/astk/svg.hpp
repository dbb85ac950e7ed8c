#pragma once

#include <string>

#include "astk/extension.hpp"
#include "astk/spline.hpp"

namespace astk {

struct SvgOptions {
  bool extended = false;           // draw the extended mesh with classified markers
  int cell = 36;                   // pixels per index unit
  int margin = 30;
  const SplineSpace* raster_space = nullptr;  // optional blending-function raster
  int raster_function = -1;
  int raster_samples = 48;
};

/// Index-space rendering with the usual color code: active vertices hollow
/// circles, T-junctions red circles, crossing red stars, overlap green
/// triangles, new extended vertices black squares, inactive base vertices
/// grey circles.
std::string render_svg(const TMesh& mesh, const SvgOptions& options = {});

}  // namespace astk
