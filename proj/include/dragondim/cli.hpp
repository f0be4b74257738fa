#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dragondim/angles.hpp"
#include "dragondim/curve.hpp"
#include "dragondim/render.hpp"

namespace dragondim::cli {

/// A fold angle as typed on the command line. "pi/2", "2pi/3", "25*pi/18" and
/// "1/2" (read as a multiple of pi) are exact; anything else is radians.
struct AngleSpec {
  std::string text;
  double radians = 0.0;
  std::optional<std::pair<std::int64_t, std::int64_t>> pi_fraction;
};

AngleSpec parse_angle(std::string_view text);

struct LevelRange {
  int lo = 0;
  int hi = 0;
};

/// "6..12" or a single level "8".
LevelRange parse_range(std::string_view text);

enum class Command { Gen, Plot, Dim, Bounds, Verify };

enum class PlotTarget { Curve, GraphX, GraphY };

struct RunConfig {
  Command command = Command::Gen;
  std::optional<AngleSpec> theta;
  std::optional<Rational> alpha_turns;  // alternative to theta: alpha = 2 pi p/q
  int depth = 10;
  LevelRange levels{6, 12};
  int depth_margin = 2;
  Axis axis = Axis::X;
  PlotTarget target = PlotTarget::Curve;
  RenderSpec render;
  std::string out;     // empty: standard output
  std::string format;  // empty: the command's default
  int max_depth = kDefaultMaxDepth;
};

DragonParams resolve_params(const RunConfig& config);

/// Exit status: 0 success, 1 failed verification, 2 bad arguments.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (program name first), applies DRAGONDIM_MAX_DEPTH, and runs.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dragondim::cli
