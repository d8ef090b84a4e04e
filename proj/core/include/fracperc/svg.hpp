#pragma once

#include <string>

#include "fracperc/serialize.hpp"

namespace fracperc {

/// Band chart of the p-axis: one vertical marker per threshold of a PhaseReport
/// JSON document, with the intervals between markers shaded. Pure function of its input.
std::string render_band_chart(const Json& report);

}  // namespace fracperc
