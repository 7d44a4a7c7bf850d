#include "ecoopt/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ecoopt/errors.hpp"

namespace ecoopt::sensitivity {

const char* level_name(SensitivityLevel level) {
    switch (level) {
        case SensitivityLevel::High: return "High";
        case SensitivityLevel::Medium: return "Medium";
        default: return "Low";
    }
}

std::vector<std::pair<std::string, WeightConfig>> default_weight_configs() {
    return {
        {"Sustainability-focused", {0.60, 0.30, 0.10}},
        {"Resilience-focused", {0.30, 0.60, 0.10}},
        {"Environment-focused", {0.20, 0.20, 0.60}},
        {"Balanced", {0.33, 0.33, 0.34}},
        {"Sustainability-resilience", {0.50, 0.40, 0.10}},
    };
}

std::vector<WeightSweepRow> sweep_weights(
    const std::vector<std::pair<std::string, WeightConfig>>& configs,
    const ModelCoefficients& c, const BoundsSet& b, const solver::SolverConfig& cfg) {
    std::vector<WeightSweepRow> rows;
    rows.reserve(configs.size());
    for (const auto& [label, weights] : configs) {
        const auto solved = solver::maximize(weights, c, b, cfg);
        const auto oracle = solver::corner_oracle(weights, c, b);

        if (std::abs(solved.objective_value - oracle.objective_value) > 1e-4) {
            std::ostringstream msg;
            msg << "solver and corner oracle disagree for '" << label << "': " << solved.objective_value
                << " vs " << oracle.objective_value;
            throw ContractError(msg.str());
        }
        const auto xs = solved.optimum.to_array();
        const auto xo = oracle.optimum.to_array();
        for (std::size_t i = 0; i < kNumVariables; ++i) {
            if (std::abs(xs[i] - xo[i]) > 1e-4 * (b[i].hi - b[i].lo)) {
                std::ostringstream msg;
                msg << "solver optimum differs from corner oracle in " << kVariableNames[i]
                    << " for '" << label << "'";
                throw ContractError(msg.str());
            }
        }

        rows.push_back({label, weights, solved.objective_value, solved.optimum});
    }
    return rows;
}

std::vector<SensitivityRow> parameter_sensitivity(const DeploymentStrategy& x_star,
                                                  const WeightConfig& w,
                                                  const ModelCoefficients& c,
                                                  const BoundsSet& b, double delta_fraction,
                                                  const LevelThresholds& thresholds) {
    b.validate();
    if (!b.contains(x_star)) throw ContractError("perturbation base point is outside the bounds");
    if (!(delta_fraction > 0.0) || !(delta_fraction < 1.0)) {
        throw ContractError("delta_fraction must lie in (0, 1)");
    }

    const double baseline = composite_objective(x_star, w, c);
    if (baseline == 0.0) {
        throw DegenerateInputError("objective is zero at the base point; relative change undefined");
    }

    std::vector<SensitivityRow> rows;
    rows.reserve(kNumVariables);
    auto base = x_star.to_array();
    for (std::size_t i = 0; i < kNumVariables; ++i) {
        double worst = 0.0;
        for (const double sign : {+1.0, -1.0}) {
            auto perturbed = base;
            perturbed[i] = b.clamp(i, base[i] * (1.0 + sign * delta_fraction));
            const double f = composite_objective(DeploymentStrategy::from_array(perturbed), w, c);
            worst = std::max(worst, std::abs(f - baseline));
        }
        const double pct = 100.0 * worst / std::abs(baseline);
        SensitivityRow row;
        row.parameter = std::string(kVariableNames[i]);
        row.coefficient_pct = pct;
        row.level = pct >= thresholds.high_pct    ? SensitivityLevel::High
                    : pct >= thresholds.medium_pct ? SensitivityLevel::Medium
                                                   : SensitivityLevel::Low;
        rows.push_back(std::move(row));
    }

    std::stable_sort(rows.begin(), rows.end(), [](const SensitivityRow& a, const SensitivityRow& r) {
        return a.coefficient_pct > r.coefficient_pct;
    });
    return rows;
}

} // namespace ecoopt::sensitivity
