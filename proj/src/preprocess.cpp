#include "ecoopt/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "ecoopt/errors.hpp"

namespace ecoopt::preprocess {

double quantile_type7(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) throw ContractError("quantile of empty sample");
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lower = static_cast<std::size_t>(pos);
    if (lower + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(lower);
    return sorted[lower] + frac * (sorted[lower + 1] - sorted[lower]);
}

FittedPipeline fit(const DataTable& table, const PipelineConfig& config) {
    if (table.rows.empty()) throw ContractError("cannot fit a pipeline on an empty table");
    if (!(config.iqr_multiplier > 0.0)) throw ContractError("iqr_multiplier must be positive");
    table.validate();

    FittedPipeline fitted;
    fitted.config = config;
    fitted.schema = table.columns;
    fitted.stats.resize(table.columns.size());

    for (std::size_t j = 0; j < table.columns.size(); ++j) {
        auto& st = fitted.stats[j];
        if (table.columns[j].kind == ColumnKind::numeric) {
            std::vector<double> v = table.numeric_values(j);
            if (v.empty()) {
                throw FitError("column '" + table.columns[j].name + "' has no observed values");
            }
            double sum = 0.0;
            for (double x : v) sum += x;
            st.mean = sum / static_cast<double>(v.size());
            double ss = 0.0;
            for (double x : v) ss += (x - st.mean) * (x - st.mean);
            const double denom = fitted.config.population_std
                                     ? static_cast<double>(v.size())
                                     : static_cast<double>(std::max<std::size_t>(v.size() - 1, 1));
            st.stddev = std::sqrt(ss / denom);
            std::sort(v.begin(), v.end());
            st.q1 = quantile_type7(v, 0.25);
            st.q3 = quantile_type7(v, 0.75);
            const double iqr = st.q3 - st.q1;
            st.lower_fence = st.q1 - config.iqr_multiplier * iqr;
            st.upper_fence = st.q3 + config.iqr_multiplier * iqr;
            if (config.scale && st.stddev == 0.0) {
                fitted.warnings.push_back("column '" + table.columns[j].name +
                                          "' has zero variance; left unscaled");
            }
        } else {
            std::map<std::string, std::size_t> counts;
            for (const auto& row : table.rows) {
                if (const std::string* s = std::get_if<std::string>(&row[j])) ++counts[*s];
            }
            if (counts.empty()) {
                throw FitError("column '" + table.columns[j].name + "' has no observed values");
            }
            // highest count wins; map order resolves ties to the smallest label
            std::size_t best = 0;
            for (const auto& [label, count] : counts) {
                if (count > best) {
                    best = count;
                    st.mode = label;
                }
            }
        }
    }

    // interaction inputs must exist and be numeric
    for (const auto& [a, b] : config.interaction_pairs) {
        for (const auto& name : {a, b}) {
            const std::size_t j = table.column_index(name);
            if (table.columns[j].kind != ColumnKind::numeric) {
                throw ContractError("interaction column '" + name + "' is not numeric");
            }
        }
    }
    return fitted;
}

DataTable transform(const FittedPipeline& pipeline, const DataTable& table) {
    if (table.columns.size() != pipeline.schema.size()) {
        throw ContractError("table schema does not match the fitted pipeline");
    }
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
        if (table.columns[j].name != pipeline.schema[j].name ||
            table.columns[j].kind != pipeline.schema[j].kind) {
            throw ContractError("table schema does not match the fitted pipeline");
        }
    }

    DataTable out;
    out.name = table.name;
    out.columns = table.columns;
    out.rows.reserve(table.rows.size());

    const auto& cfg = pipeline.config;
    for (const auto& src : table.rows) {
        std::vector<Cell> row = src;

        // stage 1: impute
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (!is_missing(row[j])) continue;
            if (pipeline.schema[j].kind == ColumnKind::numeric) {
                row[j] = pipeline.stats[j].mean;
            } else {
                row[j] = pipeline.stats[j].mode;
            }
        }

        // stage 2: outliers, against fit-time fences in raw units
        bool drop_row = false;
        for (std::size_t j = 0; j < row.size() && !drop_row; ++j) {
            if (pipeline.schema[j].kind != ColumnKind::numeric) continue;
            double& v = std::get<double>(row[j]);
            const auto& st = pipeline.stats[j];
            if (v < st.lower_fence || v > st.upper_fence) {
                if (cfg.outlier_action == OutlierAction::drop) {
                    drop_row = true;
                } else {
                    v = std::min(std::max(v, st.lower_fence), st.upper_fence);
                }
            }
        }
        if (drop_row) continue;

        // stage 3: z-score with fit-time statistics
        if (cfg.scale) {
            for (std::size_t j = 0; j < row.size(); ++j) {
                if (pipeline.schema[j].kind != ColumnKind::numeric) continue;
                const auto& st = pipeline.stats[j];
                if (st.stddev == 0.0) continue; // warned at fit time
                double& v = std::get<double>(row[j]);
                v = (v - st.mean) / st.stddev;
            }
        }
        out.rows.push_back(std::move(row));
    }

    // stage 4: interaction columns as products of the (scaled) inputs
    for (const auto& [a, b] : cfg.interaction_pairs) {
        const std::size_t ja = out.column_index(a);
        const std::size_t jb = out.column_index(b);
        out.columns.push_back({a + "_x_" + b, ColumnKind::numeric});
        for (auto& row : out.rows) {
            row.push_back(std::get<double>(row[ja]) * std::get<double>(row[jb]));
        }
    }
    return out;
}

} // namespace ecoopt::preprocess
