#pragma once

#include <string>
#include <vector>

namespace gracefill {
namespace svg {

/// One plotted curve; x is the sample index.
struct Series {
    std::string name;
    std::vector<double> values;
};

/// Bars for one x-axis group, one value per configured series name.
struct BarGroup {
    std::string label;
    std::vector<double> values;
};

/// Static line chart with axes, ticks and a legend. Output is a complete
/// SVG document; byte-identical for identical input.
std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series,
                       bool log_y = false);

/// Grouped bar chart; every bar carries its value as a text label.
std::string bar_chart(const std::string& title, const std::string& y_label,
                      const std::vector<std::string>& series_names,
                      const std::vector<BarGroup>& groups);

}  // namespace svg
}  // namespace gracefill
