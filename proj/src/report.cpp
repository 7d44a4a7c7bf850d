#include "ecoopt/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "ecoopt/data_table.hpp"
#include "ecoopt/errors.hpp"

namespace ecoopt::report {

std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string markdown_table(const std::vector<std::string>& header,
                           const std::vector<std::vector<std::string>>& rows) {
    std::string out = "|";
    for (const auto& h : header) out += " " + h + " |";
    out += "\n|";
    for (std::size_t i = 0; i < header.size(); ++i) out += " --- |";
    out += "\n";
    for (const auto& row : rows) {
        out += "|";
        for (const auto& cell : row) out += " " + cell + " |";
        out += "\n";
    }
    return out;
}

std::string svg_bar_chart(const std::string& title,
                          const std::vector<std::pair<std::string, double>>& bars) {
    constexpr int width = 800;
    constexpr int height = 500;
    constexpr int margin_left = 220;
    constexpr int margin_top = 50;
    constexpr int margin_bottom = 20;
    constexpr int bar_gap = 6;

    double max_value = 0.0;
    for (const auto& [label, value] : bars) max_value = std::max(max_value, std::abs(value));
    if (max_value == 0.0) max_value = 1.0;

    const int plot_width = width - margin_left - 30;
    const int plot_height = height - margin_top - margin_bottom;
    const int slot = bars.empty() ? plot_height
                                  : plot_height / static_cast<int>(bars.size());
    const int bar_height = std::max(slot - bar_gap, 4);

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
           "viewBox=\"0 0 800 500\">\n";
    svg += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    svg += "<text x=\"400\" y=\"28\" font-family=\"sans-serif\" font-size=\"18\" "
           "text-anchor=\"middle\">" + title + "</text>\n";

    for (std::size_t i = 0; i < bars.size(); ++i) {
        const auto& [label, value] = bars[i];
        const int y = margin_top + static_cast<int>(i) * slot;
        const int w = static_cast<int>(std::lround(std::abs(value) / max_value * plot_width));
        svg += "<text x=\"" + std::to_string(margin_left - 8) + "\" y=\"" +
               std::to_string(y + bar_height / 2 + 5) +
               "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"end\">" + label +
               "</text>\n";
        svg += "<rect x=\"" + std::to_string(margin_left) + "\" y=\"" + std::to_string(y) +
               "\" width=\"" + std::to_string(std::max(w, 1)) + "\" height=\"" +
               std::to_string(bar_height) + "\" fill=\"#4878a8\"/>\n";
        svg += "<text x=\"" + std::to_string(margin_left + std::max(w, 1) + 6) + "\" y=\"" +
               std::to_string(y + bar_height / 2 + 5) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + format_double(value) +
               "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw IoError("write failed for " + path.string());
}

} // namespace ecoopt::report
