#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dragondim/coordfn.hpp"
#include "dragondim/curve.hpp"

namespace dragondim {

struct RenderSpec {
  int width = 800;
  int height = 800;
  int margin = 20;
  double stroke_width = 1.0;
  // Draw stage k-1 underneath stage k, the latter in red.
  bool highlight_last_refinement = false;
};

/// Affine map from drawing coordinates to SVG pixels, y pointing up in the
/// drawing and down on the page.
struct Viewport {
  double x_min = 0.0;
  double y_max = 0.0;
  double scale_x = 1.0;
  double scale_y = 1.0;
  double offset_x = 0.0;
  double offset_y = 0.0;

  Point to_pixel(Point p) const;
  Point from_pixel(Point p) const;
};

/// Fits the bounding box of `points` into the drawing area of `spec`. With
/// `uniform` both axes share one scale and the box is centred.
Viewport fit_viewport(std::span<const Point> points, const RenderSpec& spec, bool uniform);

std::string emit_curve_svg(const PolylineCurve& curve, const RenderSpec& spec = {});

/// Graph {(t, f(t))} of a coordinate function, stretched to the drawing area.
std::string emit_graph_svg(const PiecewiseLinear& f, const RenderSpec& spec = {});

/// "t,value" header, then one row per breakpoint with 12 decimals.
std::string emit_graph_csv(const PiecewiseLinear& f);

struct GraphSample {
  double t = 0.0;
  double value = 0.0;
};

std::vector<GraphSample> parse_graph_csv(std::string_view text);

/// "j,x,y" header, then one row per vertex with 12 decimals.
std::string emit_curve_csv(const PolylineCurve& curve);

}  // namespace dragondim
