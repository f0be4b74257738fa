#include "dragondim/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>

#include "dragondim/error.hpp"

namespace dragondim {

namespace {

std::string fixed(double v, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", decimals, v);
  std::string s(buffer);
  // "-0.000..." carries no information and breaks byte comparisons.
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

void validate(const RenderSpec& spec) {
  if (spec.width <= 0 || spec.height <= 0) {
    throw Error(Errc::InvalidArgument, "width and height must be positive");
  }
  if (spec.margin < 0 || 2 * spec.margin >= std::min(spec.width, spec.height)) {
    throw Error(Errc::InvalidArgument, "margin must be non-negative and leave a drawing area");
  }
  if (!(spec.stroke_width > 0.0)) throw Error(Errc::InvalidArgument, "stroke width must be positive");
}

struct Stroke {
  std::span<const Point> points;
  const char* colour;
};

std::string svg_document(std::span<const Stroke> strokes, const Viewport& view,
                         const RenderSpec& spec) {
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(spec.width) + "\" height=\"" + std::to_string(spec.height) +
         "\" viewBox=\"0 0 " + std::to_string(spec.width) + " " + std::to_string(spec.height) +
         "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(spec.width) + "\" height=\"" +
         std::to_string(spec.height) + "\" fill=\"white\"/>\n";
  for (const Stroke& stroke : strokes) {
    out += "<polyline fill=\"none\" stroke=\"";
    out += stroke.colour;
    out += "\" stroke-width=\"" + fixed(spec.stroke_width, 3) +
           "\" stroke-linejoin=\"round\" points=\"";
    bool first = true;
    for (const Point& p : stroke.points) {
      const Point px = view.to_pixel(p);
      if (!first) out += ' ';
      first = false;
      out += fixed(px.x, 6);
      out += ',';
      out += fixed(px.y, 6);
    }
    out += "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

std::vector<Point> graph_points(const PiecewiseLinear& f) {
  std::vector<Point> points(f.values.size());
  for (std::size_t j = 0; j < f.values.size(); ++j) {
    points[j] = {std::ldexp(static_cast<double>(j), -f.depth), f.values[j]};
  }
  return points;
}

}  // namespace

Point Viewport::to_pixel(Point p) const {
  return {offset_x + (p.x - x_min) * scale_x, offset_y + (y_max - p.y) * scale_y};
}

Point Viewport::from_pixel(Point p) const {
  return {x_min + (p.x - offset_x) / scale_x, y_max - (p.y - offset_y) / scale_y};
}

Viewport fit_viewport(std::span<const Point> points, const RenderSpec& spec, bool uniform) {
  validate(spec);
  if (points.empty()) throw Error(Errc::InvalidArgument, "nothing to draw");
  double x_min = points[0].x, x_max = points[0].x, y_min = points[0].y, y_max = points[0].y;
  for (const Point& p : points) {
    x_min = std::min(x_min, p.x);
    x_max = std::max(x_max, p.x);
    y_min = std::min(y_min, p.y);
    y_max = std::max(y_max, p.y);
  }
  const double area_w = spec.width - 2.0 * spec.margin;
  const double area_h = spec.height - 2.0 * spec.margin;
  const double box_w = x_max - x_min;
  const double box_h = y_max - y_min;

  Viewport view;
  view.x_min = x_min;
  view.y_max = y_max;
  if (uniform) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    double scale = std::min(box_w > 0.0 ? area_w / box_w : inf, box_h > 0.0 ? area_h / box_h : inf);
    if (!std::isfinite(scale)) scale = 1.0;
    view.scale_x = view.scale_y = scale;
  } else {
    view.scale_x = box_w > 0.0 ? area_w / box_w : 1.0;
    view.scale_y = box_h > 0.0 ? area_h / box_h : 1.0;
  }
  view.offset_x = spec.margin + (area_w - box_w * view.scale_x) / 2.0;
  view.offset_y = spec.margin + (area_h - box_h * view.scale_y) / 2.0;
  return view;
}

std::string emit_curve_svg(const PolylineCurve& curve, const RenderSpec& spec) {
  if (curve.vertices.empty()) throw Error(Errc::InvalidArgument, "empty curve");
  if (spec.highlight_last_refinement && curve.depth > 0) {
    const PolylineCurve previous = build_curve(curve.params, curve.depth - 1);
    std::vector<Point> all(previous.vertices);
    all.insert(all.end(), curve.vertices.begin(), curve.vertices.end());
    const Viewport view = fit_viewport(all, spec, true);
    const Stroke strokes[] = {{previous.vertices, "black"}, {curve.vertices, "red"}};
    return svg_document(strokes, view, spec);
  }
  const Viewport view = fit_viewport(curve.vertices, spec, true);
  const Stroke strokes[] = {{curve.vertices, "black"}};
  return svg_document(strokes, view, spec);
}

std::string emit_graph_svg(const PiecewiseLinear& f, const RenderSpec& spec) {
  const std::vector<Point> points = graph_points(f);
  if (spec.highlight_last_refinement && f.depth > 0) {
    const std::vector<Point> previous =
        graph_points(coordinate_function(f.params, f.depth - 1, f.axis));
    std::vector<Point> all(previous);
    all.insert(all.end(), points.begin(), points.end());
    const Viewport view = fit_viewport(all, spec, false);
    const Stroke strokes[] = {{previous, "black"}, {points, "red"}};
    return svg_document(strokes, view, spec);
  }
  const Viewport view = fit_viewport(points, spec, false);
  const Stroke strokes[] = {{points, "black"}};
  return svg_document(strokes, view, spec);
}

std::string emit_graph_csv(const PiecewiseLinear& f) {
  std::string out = "t,value\n";
  out.reserve(out.size() + f.values.size() * 32);
  for (std::size_t j = 0; j < f.values.size(); ++j) {
    out += fixed(std::ldexp(static_cast<double>(j), -f.depth), 12);
    out += ',';
    out += fixed(f.values[j], 12);
    out += '\n';
  }
  return out;
}

std::vector<GraphSample> parse_graph_csv(std::string_view text) {
  std::vector<GraphSample> out;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty()) continue;
    if (header) {
      if (line != "t,value") throw Error(Errc::InvalidArgument, "missing t,value header");
      header = false;
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) throw Error(Errc::InvalidArgument, "malformed row: " + line);
    char* stop = nullptr;
    const double t = std::strtod(line.c_str(), &stop);
    if (stop != line.c_str() + comma) throw Error(Errc::InvalidArgument, "malformed row: " + line);
    const double value = std::strtod(line.c_str() + comma + 1, &stop);
    if (stop != line.c_str() + line.size()) {
      throw Error(Errc::InvalidArgument, "malformed row: " + line);
    }
    out.push_back({t, value});
  }
  if (header) throw Error(Errc::InvalidArgument, "missing t,value header");
  return out;
}

std::string emit_curve_csv(const PolylineCurve& curve) {
  std::string out = "j,x,y\n";
  for (std::size_t j = 0; j < curve.vertices.size(); ++j) {
    out += std::to_string(j);
    out += ',';
    out += fixed(curve.vertices[j].x, 12);
    out += ',';
    out += fixed(curve.vertices[j].y, 12);
    out += '\n';
  }
  return out;
}

}  // namespace dragondim
