#ifndef ECOOPT_DATA_TABLE_HPP
#define ECOOPT_DATA_TABLE_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ecoopt {

enum class ColumnKind { numeric, categorical };

struct ColumnInfo {
    std::string name;
    ColumnKind kind = ColumnKind::numeric;
};

// One cell: missing, a finite number, or a category label.
using Cell = std::variant<std::monostate, double, std::string>;

inline bool is_missing(const Cell& c) { return std::holds_alternative<std::monostate>(c); }

// Named-column tabular dataset with per-cell missing support.
struct DataTable {
    std::string name;
    std::vector<ColumnInfo> columns;
    std::vector<std::vector<Cell>> rows;

    std::size_t n_rows() const { return rows.size(); }
    std::size_t n_cols() const { return columns.size(); }

    // Throws ContractError when the column does not exist.
    std::size_t column_index(std::string_view column_name) const;
    bool has_column(std::string_view column_name) const;

    // Non-missing numeric values of a column, in row order.
    std::vector<double> numeric_values(std::size_t col) const;
    std::vector<double> numeric_values(std::string_view column_name) const;

    // Rows where both columns are present; returns the paired values.
    std::pair<std::vector<double>, std::vector<double>> paired_values(
        std::string_view col_a, std::string_view col_b) const;

    // Every row must have one cell per column; numeric cells finite.
    void validate() const;
};

// Shortest round-trip decimal representation ('.' separator, no locale).
std::string format_double(double v);

// CSV: UTF-8, header row, empty field = missing, '.' decimal separator.
void write_csv(const DataTable& table, const std::filesystem::path& path);
std::string to_csv(const DataTable& table);

// Reads a CSV written by write_csv (or any simple quoted CSV). Column kinds
// are inferred: a column is numeric when every non-empty cell parses as a
// full double.
DataTable read_csv(const std::filesystem::path& path, std::string table_name = "");
DataTable parse_csv(std::string_view text, std::string table_name = "");

} // namespace ecoopt

#endif // ECOOPT_DATA_TABLE_HPP
