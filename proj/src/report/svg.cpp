#include "defectlab/report/svg.hpp"

#include <algorithm>
#include <cmath>

#include "defectlab/common/text.hpp"

namespace defectlab::report {

namespace {

const char* kFills[] = {"#7fa8d9", "#f2a65a", "#8fbf88", "#c78ac7", "#d9d16e"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

std::string render_boxplot_svg(const std::string& title, const std::string& y_label,
                               const std::vector<BoxGroup>& groups, double y_lo, double y_hi) {
    if (y_hi <= y_lo) {
        y_lo -= 0.5;
        y_hi += 0.5;
    }
    const double margin_left = 70, margin_right = 20, margin_top = 40, margin_bottom = 50;
    const double box_w = 34, box_gap = 10, group_gap = 40;

    std::size_t total_boxes = 0;
    for (const auto& g : groups) total_boxes += g.boxes.size();
    const double plot_w =
        static_cast<double>(total_boxes) * (box_w + box_gap) +
        static_cast<double>(groups.size()) * group_gap;
    const double plot_h = 300;
    const double width = margin_left + plot_w + margin_right;
    const double height = margin_top + plot_h + margin_bottom;

    auto y_px = [&](double v) {
        return margin_top + plot_h * (1.0 - (v - y_lo) / (y_hi - y_lo));
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
           num(height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + num(width / 2) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">" +
           title + "</text>\n";

    // y axis with 5 ticks
    svg += "<line x1=\"" + num(margin_left) + "\" y1=\"" + num(margin_top) + "\" x2=\"" +
           num(margin_left) + "\" y2=\"" + num(margin_top + plot_h) + "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double v = y_lo + (y_hi - y_lo) * t / 4.0;
        const double y = y_px(v);
        svg += "<line x1=\"" + num(margin_left - 4) + "\" y1=\"" + num(y) + "\" x2=\"" +
               num(margin_left) + "\" y2=\"" + num(y) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(margin_left - 8) + "\" y=\"" + num(y + 4) +
               "\" text-anchor=\"end\">" + num(v) + "</text>\n";
    }
    svg += "<text x=\"16\" y=\"" + num(margin_top + plot_h / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " + num(margin_top + plot_h / 2) +
           ")\">" + y_label + "</text>\n";

    double x = margin_left + group_gap / 2;
    for (const auto& g : groups) {
        const double group_start = x;
        std::size_t color = 0;
        for (const auto& b : g.boxes) {
            const double cx = x + box_w / 2;
            const std::string fill = kFills[color % 5];
            ++color;
            svg += "<line x1=\"" + num(cx) + "\" y1=\"" + num(y_px(b.stats.min)) + "\" x2=\"" +
                   num(cx) + "\" y2=\"" + num(y_px(b.stats.max)) + "\" stroke=\"black\"/>\n";
            for (double whisker : {b.stats.min, b.stats.max})
                svg += "<line x1=\"" + num(cx - box_w / 4) + "\" y1=\"" + num(y_px(whisker)) +
                       "\" x2=\"" + num(cx + box_w / 4) + "\" y2=\"" + num(y_px(whisker)) +
                       "\" stroke=\"black\"/>\n";
            svg += "<rect x=\"" + num(x) + "\" y=\"" + num(y_px(b.stats.q3)) + "\" width=\"" +
                   num(box_w) + "\" height=\"" +
                   num(std::max(1.0, y_px(b.stats.q1) - y_px(b.stats.q3))) + "\" fill=\"" + fill +
                   "\" stroke=\"black\"/>\n";
            svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(y_px(b.stats.median)) + "\" x2=\"" +
                   num(x + box_w) + "\" y2=\"" + num(y_px(b.stats.median)) +
                   "\" stroke=\"black\" stroke-width=\"2\"/>\n";
            svg += "<text x=\"" + num(cx) + "\" y=\"" + num(margin_top + plot_h + 16) +
                   "\" text-anchor=\"middle\">" + b.label + "</text>\n";
            x += box_w + box_gap;
        }
        const double group_end = x - box_gap;
        svg += "<text x=\"" + num((group_start + group_end) / 2) + "\" y=\"" +
               num(margin_top + plot_h + 34) + "\" text-anchor=\"middle\" font-weight=\"bold\">" +
               g.label + "</text>\n";
        x += group_gap;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace defectlab::report
