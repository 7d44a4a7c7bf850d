#include "ecoopt/data_table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ecoopt/errors.hpp"

namespace ecoopt {

std::size_t DataTable::column_index(std::string_view column_name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].name == column_name) return i;
    }
    std::ostringstream msg;
    msg << "table '" << name << "' has no column '" << column_name << "'";
    throw ContractError(msg.str());
}

bool DataTable::has_column(std::string_view column_name) const {
    for (const auto& c : columns) {
        if (c.name == column_name) return true;
    }
    return false;
}

std::vector<double> DataTable::numeric_values(std::size_t col) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        if (const double* v = std::get_if<double>(&row[col])) out.push_back(*v);
    }
    return out;
}

std::vector<double> DataTable::numeric_values(std::string_view column_name) const {
    return numeric_values(column_index(column_name));
}

std::pair<std::vector<double>, std::vector<double>> DataTable::paired_values(
    std::string_view col_a, std::string_view col_b) const {
    const std::size_t a = column_index(col_a);
    const std::size_t b = column_index(col_b);
    std::vector<double> va, vb;
    for (const auto& row : rows) {
        const double* pa = std::get_if<double>(&row[a]);
        const double* pb = std::get_if<double>(&row[b]);
        if (pa && pb) {
            va.push_back(*pa);
            vb.push_back(*pb);
        }
    }
    return {std::move(va), std::move(vb)};
}

void DataTable::validate() const {
    for (const auto& row : rows) {
        if (row.size() != columns.size()) {
            throw ContractError("row arity does not match column count");
        }
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (const double* v = std::get_if<double>(&row[j])) {
                if (!std::isfinite(*v)) {
                    throw ContractError("non-finite numeric cell in column " + columns[j].name);
                }
            }
        }
    }
}

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw DomainError("failed to format double");
    return std::string(buf, ptr);
}

namespace {

bool needs_quoting(const std::string& s) {
    return s.find_first_of(",\"\n") != std::string::npos;
}

void append_field(std::string& out, const std::string& s) {
    if (!needs_quoting(s)) {
        out += s;
        return;
    }
    out += '"';
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string cur;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            in_quotes = true;
        } else if (ch == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

bool parse_full_double(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end;
}

} // namespace

std::string to_csv(const DataTable& table) {
    std::string out;
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
        if (j > 0) out += ',';
        append_field(out, table.columns[j].name);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j > 0) out += ',';
            if (const double* v = std::get_if<double>(&row[j])) {
                out += format_double(*v);
            } else if (const std::string* s = std::get_if<std::string>(&row[j])) {
                append_field(out, *s);
            }
            // missing cells stay empty
        }
        out += '\n';
    }
    return out;
}

void write_csv(const DataTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << to_csv(table);
    if (!out) throw IoError("write failed for " + path.string());
}

DataTable parse_csv(std::string_view text, std::string table_name) {
    DataTable table;
    table.name = std::move(table_name);

    std::vector<std::vector<std::string>> raw;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) raw.push_back(split_csv_line(line));
        start = nl + 1;
    }
    if (raw.empty()) throw ContractError("CSV text has no header row");

    const std::size_t n_cols = raw[0].size();
    table.columns.resize(n_cols);
    for (std::size_t j = 0; j < n_cols; ++j) table.columns[j].name = raw[0][j];

    // kind inference: numeric unless some non-empty cell fails to parse
    std::vector<bool> numeric(n_cols, true);
    for (std::size_t i = 1; i < raw.size(); ++i) {
        if (raw[i].size() != n_cols) throw ContractError("CSV row has wrong field count");
        for (std::size_t j = 0; j < n_cols; ++j) {
            double v;
            if (!raw[i][j].empty() && !parse_full_double(raw[i][j], v)) numeric[j] = false;
        }
    }
    for (std::size_t j = 0; j < n_cols; ++j) {
        table.columns[j].kind = numeric[j] ? ColumnKind::numeric : ColumnKind::categorical;
    }

    table.rows.reserve(raw.size() - 1);
    for (std::size_t i = 1; i < raw.size(); ++i) {
        std::vector<Cell> row(n_cols);
        for (std::size_t j = 0; j < n_cols; ++j) {
            if (raw[i][j].empty()) {
                row[j] = std::monostate{};
            } else if (numeric[j]) {
                double v;
                parse_full_double(raw[i][j], v);
                row[j] = v;
            } else {
                row[j] = std::move(raw[i][j]);
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

DataTable read_csv(const std::filesystem::path& path, std::string table_name) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (table_name.empty()) table_name = path.stem().string();
    return parse_csv(buf.str(), std::move(table_name));
}

} // namespace ecoopt
