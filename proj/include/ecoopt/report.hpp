#ifndef ECOOPT_REPORT_HPP
#define ECOOPT_REPORT_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace ecoopt::report {

// Fixed-decimal formatting for human-facing tables ('.' separator).
std::string format_fixed(double v, int decimals);

// GitHub-style pipe table.
std::string markdown_table(const std::vector<std::string>& header,
                           const std::vector<std::vector<std::string>>& rows);

// Minimal hand-rolled horizontal bar chart, 800x500 viewport.
std::string svg_bar_chart(const std::string& title,
                          const std::vector<std::pair<std::string, double>>& bars);

void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace ecoopt::report

#endif // ECOOPT_REPORT_HPP
