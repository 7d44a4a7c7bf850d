#include "ecoopt/core_model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ecoopt/errors.hpp"

namespace ecoopt {

namespace {

bool near_one(double v) { return std::abs(v - 1.0) <= 1e-9; }

double scaled_log1p(double ratio, LogBase base) {
    const double ln = std::log1p(ratio);
    return base == LogBase::natural ? ln : ln / std::numbers::ln10;
}

} // namespace

std::array<double, kNumVariables> DeploymentStrategy::to_array() const {
    return {ai_adoption,      renewable_energy, efficiency_gain,
            innovation_index, market_stability, ai_investment,
            energy_consumption, carbon_emissions, water_usage};
}

DeploymentStrategy DeploymentStrategy::from_array(const std::array<double, kNumVariables>& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]};
}

void DeploymentStrategy::require_finite() const {
    const auto vals = to_array();
    for (std::size_t i = 0; i < kNumVariables; ++i) {
        if (!std::isfinite(vals[i])) {
            std::ostringstream msg;
            msg << "non-finite value in field " << kVariableNames[i];
            throw DomainError(msg.str());
        }
    }
}

bool WeightConfig::is_valid() const {
    return alpha >= 0.0 && beta >= 0.0 && gamma >= 0.0 &&
           std::isfinite(alpha) && std::isfinite(beta) && std::isfinite(gamma) &&
           near_one(alpha + beta + gamma);
}

void WeightConfig::validate() const {
    if (!is_valid()) {
        std::ostringstream msg;
        msg << "weights must be nonnegative and sum to 1 (got " << alpha << ", " << beta
            << ", " << gamma << ")";
        throw ContractError(msg.str());
    }
}

bool ModelCoefficients::is_valid() const {
    for (double v : {a1, a2, b1, b2, b3, g1, g2, g3, norm_energy, norm_carbon, norm_water}) {
        if (!(v > 0.0) || !std::isfinite(v)) return false;
    }
    return near_one(a1 + a2) && near_one(b1 + b2 + b3) && near_one(g1 + g2 + g3);
}

void ModelCoefficients::validate() const {
    if (!is_valid()) {
        throw ContractError("model coefficients must be positive with unit group sums");
    }
}

BoundsSet BoundsSet::defaults() {
    BoundsSet b;
    b.intervals[kAiAdoption] = {1.0, 10.0};
    b.intervals[kRenewableEnergy] = {10.0, 100.0};
    b.intervals[kEfficiencyGain] = {5.0, 80.0};
    b.intervals[kInnovationIndex] = {20.0, 100.0};
    b.intervals[kMarketStability] = {1.0, 10.0};
    b.intervals[kAiInvestment] = {10.0, 1000.0};
    b.intervals[kEnergyConsumption] = {50.0, 2000.0};
    b.intervals[kCarbonEmissions] = {20.0, 1000.0};
    b.intervals[kWaterUsage] = {100.0, 5000.0};
    return b;
}

bool BoundsSet::contains(const DeploymentStrategy& s) const {
    const auto v = s.to_array();
    for (std::size_t i = 0; i < kNumVariables; ++i) {
        if (v[i] < intervals[i].lo || v[i] > intervals[i].hi) return false;
    }
    return true;
}

double BoundsSet::clamp(std::size_t i, double v) const {
    return std::min(std::max(v, intervals[i].lo), intervals[i].hi);
}

void BoundsSet::validate() const {
    for (std::size_t i = 0; i < kNumVariables; ++i) {
        if (!(intervals[i].lo < intervals[i].hi)) {
            std::ostringstream msg;
            msg << "bounds for " << kVariableNames[i] << " must satisfy lower < upper";
            throw ContractError(msg.str());
        }
    }
}

double sustainability_impact(const DeploymentStrategy& s, const ModelCoefficients& c) {
    s.require_finite();
    if (s.renewable_energy < 0.0) {
        throw DomainError("renewable_energy must be nonnegative");
    }
    const double log_term = scaled_log1p(s.renewable_energy / 100.0, c.log_base);
    const double eff = s.efficiency_gain / 100.0;
    return c.a1 * s.ai_adoption * log_term + c.a2 * eff * eff;
}

double economic_resilience(const DeploymentStrategy& s, const ModelCoefficients& c) {
    s.require_finite();
    if (s.ai_investment < 0.0) {
        throw DomainError("ai_investment must be nonnegative");
    }
    return c.b1 * s.innovation_index / 100.0 + c.b2 * s.market_stability / 10.0 +
           c.b3 * std::sqrt(s.ai_investment / 1000.0);
}

double environmental_cost(const DeploymentStrategy& s, const ModelCoefficients& c) {
    s.require_finite();
    if (s.energy_consumption < 0.0 || s.carbon_emissions < 0.0 || s.water_usage < 0.0) {
        throw DomainError("consumption fields must be nonnegative");
    }
    return c.g1 * s.energy_consumption / c.norm_energy +
           c.g2 * s.carbon_emissions / c.norm_carbon +
           c.g3 * s.water_usage / c.norm_water;
}

double composite_objective(const DeploymentStrategy& s, const WeightConfig& w,
                           const ModelCoefficients& c) {
    w.validate();
    return weighted_objective(s, w, c);
}

double weighted_objective(const DeploymentStrategy& s, const WeightConfig& w,
                          const ModelCoefficients& c) {
    return w.alpha * sustainability_impact(s, c) + w.beta * economic_resilience(s, c) -
           w.gamma * environmental_cost(s, c);
}

std::array<double, kNumVariables> objective_gradient(const DeploymentStrategy& s,
                                                     const WeightConfig& w,
                                                     const ModelCoefficients& c) {
    s.require_finite();
    if (s.renewable_energy <= -100.0) {
        throw DomainError("renewable_energy must exceed -100 for the log term");
    }
    if (s.ai_investment == 0.0) {
        throw SingularityError("sqrt investment derivative is singular at zero");
    }
    if (s.ai_investment < 0.0) {
        throw DomainError("ai_investment must be positive");
    }

    // d/dren of the log term is 1/(100+ren), divided by ln(10) in base-10 mode.
    const double log_term = scaled_log1p(s.renewable_energy / 100.0, c.log_base);
    const double log_slope_scale = c.log_base == LogBase::natural ? 1.0 : 1.0 / std::numbers::ln10;

    std::array<double, kNumVariables> g{};
    g[kAiAdoption] = w.alpha * c.a1 * log_term;
    g[kRenewableEnergy] = w.alpha * c.a1 * s.ai_adoption * log_slope_scale / (100.0 + s.renewable_energy);
    g[kEfficiencyGain] = w.alpha * c.a2 * 2.0 * s.efficiency_gain / 1e4;
    g[kInnovationIndex] = w.beta * c.b1 / 100.0;
    g[kMarketStability] = w.beta * c.b2 / 10.0;
    g[kAiInvestment] = w.beta * c.b3 / (2000.0 * std::sqrt(s.ai_investment / 1000.0));
    g[kEnergyConsumption] = -w.gamma * c.g1 / c.norm_energy;
    g[kCarbonEmissions] = -w.gamma * c.g2 / c.norm_carbon;
    g[kWaterUsage] = -w.gamma * c.g3 / c.norm_water;
    return g;
}

} // namespace ecoopt
