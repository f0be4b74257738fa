#pragma once

#include <string>

#include <json.hpp>

#include "dragondim/boxdim.hpp"

namespace dragondim {

/// Rounds to 9 significant decimal digits; reports print every real this way.
double round_significant(double value, int digits = 9);

/// Dimension report with a fixed key order: theta, alpha, axis, m_levels,
/// counts, slope, intercept, r2, theoretical, abs_error, then the settings
/// that produced it.
nlohmann::ordered_json dimension_report(const DimensionEstimate& estimate);

std::string format_dimension_report(const DimensionEstimate& estimate);

}  // namespace dragondim
