#ifndef ECOOPT_PREPROCESS_HPP
#define ECOOPT_PREPROCESS_HPP

#include <string>
#include <utility>
#include <vector>

#include "ecoopt/data_table.hpp"

namespace ecoopt::preprocess {

enum class OutlierAction { winsorize, drop };

struct PipelineConfig {
    double iqr_multiplier = 1.5;
    OutlierAction outlier_action = OutlierAction::winsorize;
    bool scale = true;
    // population std matches the "mean 0, std 1" normalization contract;
    // sample std available for comparison studies
    bool population_std = true;
    std::vector<std::pair<std::string, std::string>> interaction_pairs;
};

struct ColumnStats {
    // numeric
    double mean = 0.0;
    double stddev = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double lower_fence = 0.0;
    double upper_fence = 0.0;
    // categorical
    std::string mode;
};

struct FittedPipeline {
    PipelineConfig config;
    std::vector<ColumnInfo> schema;
    std::vector<ColumnStats> stats;
    std::vector<std::string> warnings; // zero-variance columns left unscaled
};

// Records per-column mean/std (over non-missing values), mode for
// categoricals, and type-7 quartiles. Throws FitError for an all-missing
// column, naming it.
FittedPipeline fit(const DataTable& table, const PipelineConfig& config = {});

// Stage order: impute -> outlier handling (fit-time fences, raw units) ->
// z-score (fit-time mean/std) -> interaction columns on scaled values.
DataTable transform(const FittedPipeline& pipeline, const DataTable& table);

// Quartile at fraction p via linear interpolation between order statistics
// (position p*(n-1), zero-indexed). `sorted` must be ascending, non-empty.
double quantile_type7(const std::vector<double>& sorted, double p);

} // namespace ecoopt::preprocess

#endif // ECOOPT_PREPROCESS_HPP
