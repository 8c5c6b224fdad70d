#pragma once

#include "optosync/sweep.hpp"

#include <span>
#include <string>
#include <vector>

namespace optosync {

enum class HeatmapStyle { continuous, sign };

/// Static SVG heatmap of a sweep field. Sign style paints exponent < 0
/// blue, > 0 red, marginal gray; divergent cells are hatched. Continuous
/// style uses a linear color ramp with a colorbar. The document is
/// self-contained (no external references).
std::string render_heatmap(const SweepField& field, HeatmapStyle style,
                           const std::string& title = "");

struct Series {
    std::string label;
    std::span<const double> x;
    std::span<const double> y;
};

/// Static SVG line chart of one or more series over a shared x axis.
std::string render_series(const std::vector<Series>& series, const std::string& x_label,
                          const std::string& y_label, const std::string& title = "");

} // namespace optosync
