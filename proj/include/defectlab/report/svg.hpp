#pragma once

#include <string>
#include <vector>

#include "defectlab/report/summary.hpp"

namespace defectlab::report {

struct Box {
    std::string label;
    FiveNum stats;
};

struct BoxGroup {
    std::string label;  // e.g. the metric suite
    std::vector<Box> boxes;
};

/// Standalone SVG boxplot drawn from five-number summaries; no plotting
/// dependency. y range is padded around the data when lo == hi.
std::string render_boxplot_svg(const std::string& title, const std::string& y_label,
                               const std::vector<BoxGroup>& groups, double y_lo, double y_hi);

}  // namespace defectlab::report
