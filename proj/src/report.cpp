#include "dragondim/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace dragondim {

double round_significant(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", digits, value);
  return std::strtod(buffer, nullptr);
}

nlohmann::ordered_json dimension_report(const DimensionEstimate& estimate) {
  nlohmann::ordered_json levels = nlohmann::ordered_json::array();
  nlohmann::ordered_json counts = nlohmann::ordered_json::array();
  for (const MeshCount& c : estimate.counts) {
    levels.push_back(c.level);
    counts.push_back(c.total);
  }

  nlohmann::ordered_json report;
  report["theta"] = round_significant(estimate.params.theta);
  report["alpha"] = round_significant(estimate.params.alpha);
  report["axis"] = estimate.axis == Axis::X ? "x" : "y";
  report["m_levels"] = std::move(levels);
  report["counts"] = std::move(counts);
  report["slope"] = round_significant(estimate.slope);
  report["intercept"] = round_significant(estimate.intercept);
  report["r2"] = round_significant(estimate.r_squared);
  report["theoretical"] = round_significant(estimate.theoretical);
  report["abs_error"] = round_significant(estimate.abs_error);

  nlohmann::ordered_json settings;
  settings["m_lo"] = estimate.m_lo;
  settings["m_hi"] = estimate.m_hi;
  settings["depth_margin"] = estimate.depth_margin;
  settings["effective_depths"] = estimate.depths;
  settings["reflected"] = estimate.params.reflected;
  if (estimate.params.rational) {
    settings["alpha_turns"] = std::to_string(estimate.params.rational->p) + "/" +
                              std::to_string(estimate.params.rational->q);
  } else {
    settings["alpha_turns"] = nullptr;
  }
  settings["gridline_tolerance"] = kGridlineTolerance;
  report["settings"] = std::move(settings);
  return report;
}

std::string format_dimension_report(const DimensionEstimate& estimate) {
  return dimension_report(estimate).dump(2) + "\n";
}

}  // namespace dragondim
