#pragma once

#include <string>
#include <vector>

namespace trunksim {

// Metric columns a plot can select from the CSV.
const std::vector<std::string>& plot_metrics();

// Renders one polyline per (R, K, mode, source) series, lambda on the x axis,
// as a self-contained SVG document (inline styling, no external assets).
// Throws std::invalid_argument for an unknown metric (message lists the valid
// ones) or malformed CSV.
std::string plot_csv_to_svg(const std::string& csv_text, const std::string& metric);

} // namespace trunksim
