#ifndef ECOOPT_EXPERIMENTS_HPP
#define ECOOPT_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ecoopt/core_model.hpp"
#include "ecoopt/data_table.hpp"
#include "ecoopt/datagen.hpp"
#include "ecoopt/stats.hpp"
#include "ecoopt/surrogate.hpp"

namespace ecoopt::experiments {

struct ExperimentContext {
    std::uint64_t seed = 42;
    std::filesystem::path out_dir = ".";
    int threads = 1;
    LogBase log_base = LogBase::natural;
    bool write_files = true;
};

// Synthetic prediction targets. The tables do not ship with outcome labels,
// so the component scores are computed from a documented feature->strategy
// mapping and perturbed with 1% Gaussian noise.
struct TargetSet {
    surrogate::Matrix features;
    std::vector<std::string> feature_names;
    std::vector<double> sustainability;
    std::vector<double> resilience;
    std::vector<double> environmental;
    std::vector<double> composite;
};

// Maps one row of named feature values onto the nine decision variables.
DeploymentStrategy strategy_from_features(const std::vector<double>& row,
                                          const std::vector<std::string>& names);

TargetSet build_targets(const DataTable& sustainability_table, std::uint64_t seed,
                        LogBase log_base);

struct BaselineResult {
    std::vector<datagen::GenerationReport> reports; // one per builtin table
    std::vector<std::filesystem::path> files;
};
BaselineResult run_baseline(const ExperimentContext& ctx);

struct ValidateResult {
    struct ComponentRow {
        std::string component;
        surrogate::RegressionMetrics holdout;
        surrogate::RegressionMetrics cv_mean;
        surrogate::RegressionMetrics cv_std;
        std::vector<std::pair<std::string, double>> top_features;
    };
    std::vector<ComponentRow> components;
    std::vector<std::filesystem::path> files;
};
ValidateResult run_validate(const ExperimentContext& ctx);

struct CompareResult {
    struct ModelRow {
        std::string name;
        surrogate::RegressionMetrics cv_mean;
        std::vector<double> abs_residuals; // out-of-fold, row-aligned
    };
    struct TTestRow {
        std::string baseline;
        std::string challenger;
        stats::TTestResult test;
        bool significant = false;
    };
    std::vector<ModelRow> models; // linear, forest, boosting, composite model
    std::vector<TTestRow> t_tests;
    std::vector<std::filesystem::path> files;
};
CompareResult run_compare(const ExperimentContext& ctx);

struct RankingRow {
    std::string key;
    std::vector<double> values;
};
struct RankingResult {
    std::vector<std::string> value_names;
    std::vector<RankingRow> rows; // sorted descending by the sort column
    std::vector<std::filesystem::path> files;
};
RankingResult run_sectors(const ExperimentContext& ctx);
RankingResult run_countries(const ExperimentContext& ctx);

} // namespace ecoopt::experiments

#endif // ECOOPT_EXPERIMENTS_HPP
