#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "hunter/harness/experiment.hpp"

namespace hunter {

// One SVG line chart per metric, one polyline per replication. The CSVs stay
// the source of truth; every CSV row contributes exactly one vertex.
inline std::vector<std::string> emit_plots(
    const std::vector<std::vector<IntervalRow>>& runs, const std::string& plots_dir) {
    if (runs.empty() || runs[0].empty()) {
        std::cerr << "emit_plots: no results to plot\n";
        return {};
    }
    namespace fs = std::filesystem;
    fs::create_directories(plots_dir);

    const int width = 640, height = 360, pad = 40;
    std::vector<std::string> written;
    const auto& names = row_metric_names();
    for (std::size_t mi = 0; mi < names.size(); ++mi) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        std::size_t max_len = 0;
        for (const auto& rows : runs) {
            max_len = std::max(max_len, rows.size());
            for (const auto& r : rows) {
                const double v = row_metric_values(r)[mi];
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        if (hi <= lo) hi = lo + 1.0;

        const fs::path path = fs::path(plots_dir) / (names[mi] + ".svg");
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
            << "\" height=\"" << height << "\">\n";
        out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        out << "<text x=\"" << width / 2 << "\" y=\"16\" text-anchor=\"middle\">"
            << names[mi] << "</text>\n";
        out << "<line x1=\"" << pad << "\" y1=\"" << height - pad << "\" x2=\""
            << width - pad << "\" y2=\"" << height - pad
            << "\" stroke=\"black\"/>\n";
        out << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad
            << "\" y2=\"" << height - pad << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << pad << "\" y=\"" << height - pad + 16 << "\">0</text>\n";
        out << "<text x=\"" << width - pad << "\" y=\"" << height - pad + 16
            << "\" text-anchor=\"end\">" << (max_len == 0 ? 0 : max_len - 1)
            << "</text>\n";
        out << "<text x=\"4\" y=\"" << height - pad << "\">" << format_double(lo)
            << "</text>\n";
        out << "<text x=\"4\" y=\"" << pad << "\">" << format_double(hi) << "</text>\n";

        static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c",
                                       "#d62728", "#9467bd", "#8c564b"};
        for (std::size_t rep = 0; rep < runs.size(); ++rep) {
            const auto& rows = runs[rep];
            if (rows.empty()) continue;
            out << "<polyline fill=\"none\" stroke=\"" << colors[rep % 6]
                << "\" points=\"";
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const double v = row_metric_values(rows[i])[mi];
                const double x =
                    pad + (static_cast<double>(i) /
                           std::max<std::size_t>(1, max_len - 1)) *
                              (width - 2 * pad);
                const double y = height - pad - (v - lo) / (hi - lo) * (height - 2 * pad);
                out << x << ',' << y << (i + 1 < rows.size() ? " " : "");
            }
            out << "\"/>\n";
        }
        out << "</svg>\n";
        written.push_back(path.string());
    }
    return written;
}

} // namespace hunter
