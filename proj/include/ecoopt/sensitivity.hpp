#ifndef ECOOPT_SENSITIVITY_HPP
#define ECOOPT_SENSITIVITY_HPP

#include <string>
#include <utility>
#include <vector>

#include "ecoopt/core_model.hpp"
#include "ecoopt/solver.hpp"

namespace ecoopt::sensitivity {

struct WeightSweepRow {
    std::string label;
    WeightConfig weights;
    double objective = 0.0;
    DeploymentStrategy optimum{};
};

enum class SensitivityLevel { Low, Medium, High };

struct SensitivityRow {
    std::string parameter;
    double coefficient_pct = 0.0;
    SensitivityLevel level = SensitivityLevel::Low;
};

// Classification thresholds: High >= high_pct, Medium >= medium_pct.
struct LevelThresholds {
    double high_pct = 10.0;
    double medium_pct = 5.0;
};

const char* level_name(SensitivityLevel level);

// The five stock weight configurations used throughout the reports.
std::vector<std::pair<std::string, WeightConfig>> default_weight_configs();

// Solves each configuration and cross-checks the solver against the corner
// oracle; a disagreement beyond 1e-4 raises ContractError.
std::vector<WeightSweepRow> sweep_weights(
    const std::vector<std::pair<std::string, WeightConfig>>& configs,
    const ModelCoefficients& c, const BoundsSet& b, const solver::SolverConfig& cfg = {});

// One-at-a-time perturbation of each variable by +/-delta_fraction (clamped
// to bounds); coefficient is the larger relative objective change, in
// percent. Rows come back sorted descending by coefficient.
std::vector<SensitivityRow> parameter_sensitivity(const DeploymentStrategy& x_star,
                                                  const WeightConfig& w,
                                                  const ModelCoefficients& c,
                                                  const BoundsSet& b,
                                                  double delta_fraction = 0.5,
                                                  const LevelThresholds& thresholds = {});

} // namespace ecoopt::sensitivity

#endif // ECOOPT_SENSITIVITY_HPP
