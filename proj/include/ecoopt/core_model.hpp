#ifndef ECOOPT_CORE_MODEL_HPP
#define ECOOPT_CORE_MODEL_HPP

#include <array>
#include <cstddef>
#include <string_view>

namespace ecoopt {

inline constexpr std::size_t kNumVariables = 9;

// Decision-variable indices, in canonical order. Every array-of-9 in the
// project uses this ordering.
enum Var : std::size_t {
    kAiAdoption = 0,       // dimensionless scale 1-10
    kRenewableEnergy = 1,  // percent 0-100
    kEfficiencyGain = 2,   // percent
    kInnovationIndex = 3,  // scale 0-100
    kMarketStability = 4,  // scale 1-10
    kAiInvestment = 5,     // USD per capita
    kEnergyConsumption = 6, // MWh
    kCarbonEmissions = 7,  // tons CO2
    kWaterUsage = 8,       // liters
};

inline constexpr std::array<std::string_view, kNumVariables> kVariableNames = {
    "ai_adoption",        "renewable_energy", "efficiency_gain",
    "innovation_index",   "market_stability", "ai_investment",
    "energy_consumption", "carbon_emissions", "water_usage",
};

// Cost variables enter the composite objective with a negative sign; the
// split drives the oracle's tie-breaking when a partial is exactly zero.
inline constexpr std::array<bool, kNumVariables> kIsCostVariable = {
    false, false, false, false, false, false, true, true, true,
};

// One candidate AI deployment: the nine decision variables.
struct DeploymentStrategy {
    double ai_adoption = 0.0;
    double renewable_energy = 0.0;
    double efficiency_gain = 0.0;
    double innovation_index = 0.0;
    double market_stability = 0.0;
    double ai_investment = 0.0;
    double energy_consumption = 0.0;
    double carbon_emissions = 0.0;
    double water_usage = 0.0;

    std::array<double, kNumVariables> to_array() const;
    static DeploymentStrategy from_array(const std::array<double, kNumVariables>& v);

    double operator[](std::size_t i) const { return to_array()[i]; }

    // Throws DomainError if any field is non-finite.
    void require_finite() const;

    bool operator==(const DeploymentStrategy&) const = default;
};

// Simplex weights of the composite objective.
struct WeightConfig {
    double alpha = 0.6;
    double beta = 0.3;
    double gamma = 0.1;

    // alpha, beta, gamma >= 0 and summing to 1 within 1e-9.
    bool is_valid() const;
    void validate() const; // throws ContractError
};

enum class LogBase { natural, base10 };

// Coefficients and normalization constants of the three component
// functions. Kept as data so sensitivity studies can vary them.
struct ModelCoefficients {
    // sustainability
    double a1 = 0.6;
    double a2 = 0.4;
    // resilience
    double b1 = 0.4;
    double b2 = 0.4;
    double b3 = 0.2;
    // environmental cost
    double g1 = 0.4;
    double g2 = 0.4;
    double g3 = 0.2;
    double norm_energy = 2000.0; // MWh
    double norm_carbon = 1000.0; // tons
    double norm_water = 5000.0;  // liters

    LogBase log_base = LogBase::natural;

    // Positivity and the three unit-sum conditions, within 1e-9.
    bool is_valid() const;
    void validate() const; // throws ContractError
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Closed per-variable intervals for the nine decision variables.
struct BoundsSet {
    std::array<Interval, kNumVariables> intervals{};

    static BoundsSet defaults();

    const Interval& operator[](std::size_t i) const { return intervals[i]; }
    Interval& operator[](std::size_t i) { return intervals[i]; }

    bool contains(const DeploymentStrategy& s) const;
    double clamp(std::size_t i, double v) const;

    // lo < hi for every variable.
    void validate() const; // throws ContractError
};

// S(x): log-scaled renewable benefit amplified by AI adoption plus
// quadratic efficiency reward.
double sustainability_impact(const DeploymentStrategy& s, const ModelCoefficients& c);

// R(x): normalized innovation and market stability plus square-root
// investment scaling.
double economic_resilience(const DeploymentStrategy& s, const ModelCoefficients& c);

// E(x): normalized linear cost of energy, carbon and water consumption.
double environmental_cost(const DeploymentStrategy& s, const ModelCoefficients& c);

// F(x) = alpha*S + beta*R - gamma*E. Validates the weights.
double composite_objective(const DeploymentStrategy& s, const WeightConfig& w,
                           const ModelCoefficients& c);

// Same combination without the simplex check; used by the solver core and
// by scale-invariance tests that deliberately rescale weights.
double weighted_objective(const DeploymentStrategy& s, const WeightConfig& w,
                          const ModelCoefficients& c);

// Analytic partial derivatives of F with respect to the nine variables.
// ai_investment must be positive (the sqrt derivative is singular at 0).
std::array<double, kNumVariables> objective_gradient(const DeploymentStrategy& s,
                                                     const WeightConfig& w,
                                                     const ModelCoefficients& c);

} // namespace ecoopt

#endif // ECOOPT_CORE_MODEL_HPP
