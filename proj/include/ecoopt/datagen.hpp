#ifndef ECOOPT_DATAGEN_HPP
#define ECOOPT_DATAGEN_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ecoopt/data_table.hpp"

namespace ecoopt::datagen {

// One output column. Exactly one of three shapes:
//  - categorical: `categories` cycled with period `repeat`
//  - structural numeric: `cycle_values` cycled with period `repeat` (year)
//  - random numeric: clipped Gaussian marginal on [lo, hi] with optional
//    per-year trend
struct ColumnSpec {
    std::string name;
    ColumnKind kind = ColumnKind::numeric;

    std::vector<std::string> categories;
    std::vector<double> cycle_values;
    std::size_t repeat = 1;

    double lo = 0.0;
    double hi = 0.0;
    std::optional<double> mean;   // default: midpoint of [lo, hi]
    std::optional<double> stddev; // default: (hi - lo) / 6
    double trend_per_year = 0.0;

    bool is_random_numeric() const {
        return kind == ColumnKind::numeric && cycle_values.empty();
    }

    double mean_or_default() const { return mean.value_or(0.5 * (lo + hi)); }
    double stddev_or_default() const { return stddev.value_or((hi - lo) / 6.0); }
};

struct CorrelationTarget {
    std::string col_a;
    std::string col_b;
    double r = 0.0;
};

struct GeneratorSpec {
    std::string table_name;
    std::size_t n_rows = 0;
    std::vector<ColumnSpec> columns;
    std::vector<CorrelationTarget> correlations;
    std::string year_column; // empty when the table has no time dimension

    // Additive per-category offsets, keyed by a categorical column.
    std::string effect_category_column;
    std::map<std::string, std::vector<double>> category_effects;

    std::uint64_t seed = 42;

    // Correlation targets may be inflated before sampling to compensate for
    // clip attenuation; the calibration loop usually makes this unnecessary.
    double correlation_inflation = 1.0;
};

struct GenerationReport {
    DataTable table;

    struct ColumnStat {
        std::string column;
        double target_mean = 0.0, realized_mean = 0.0;
        double target_std = 0.0, realized_std = 0.0;
        double min = 0.0, max = 0.0;
    };
    struct CorrelationStat {
        std::string col_a, col_b;
        double target = 0.0, realized = 0.0;
    };
    struct TrendStat {
        std::string column;
        double target = 0.0, realized = 0.0;
    };

    std::vector<ColumnStat> column_stats;
    std::vector<CorrelationStat> correlation_stats;
    std::vector<TrendStat> trend_stats;
    int calibration_iterations = 0;
    int attempts = 1;
};

// Generates the table and the realized-versus-target statistics.
// Deterministic per spec.seed. Throws SpecError when no sub-seed attempt
// lands every correlation within +/-0.05 and every trend within +/-15%.
GenerationReport generate_full(const GeneratorSpec& spec);

DataTable generate(const GeneratorSpec& spec);

// The four stock dataset specifications.
std::vector<GeneratorSpec> builtin_specs(std::uint64_t seed = 42);

// The fourteen sector labels used by the entrepreneurship table.
const std::vector<std::string>& sector_names();

// Marks round(fraction * numeric cell count) uniformly chosen numeric
// cells missing. fraction must lie in [0, 0.05].
DataTable inject_missing(const DataTable& table, double fraction, std::uint64_t seed);

} // namespace ecoopt::datagen

#endif // ECOOPT_DATAGEN_HPP
