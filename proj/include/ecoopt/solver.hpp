#ifndef ECOOPT_SOLVER_HPP
#define ECOOPT_SOLVER_HPP

#include <functional>
#include <vector>

#include "ecoopt/core_model.hpp"

namespace ecoopt::solver {

struct SolverConfig {
    int max_iterations = 500;
    // Convergence threshold on both the projected-gradient infinity norm
    // (in scaled coordinates) and the step norm.
    double tolerance = 1e-8;
    DeploymentStrategy initial_strategy = default_initial_strategy();

    static DeploymentStrategy default_initial_strategy() {
        return {5.0, 50.0, 40.0, 60.0, 6.0, 200.0, 800.0, 300.0, 1500.0};
    }
};

struct OptimizationResult {
    DeploymentStrategy optimum{};
    double objective_value = 0.0;
    // component scores at the optimum
    double sustainability = 0.0;
    double resilience = 0.0;
    double environmental_cost = 0.0;
    int iterations = 0;
    bool converged = false;
    double kkt_residual = 0.0;
    // objective value after each accepted iterate, starting at the initial point
    std::vector<double> objective_trace;
};

// Generic box-constrained maximization problem, in raw coordinates.
struct BoxProblem {
    std::function<double(const std::vector<double>&)> objective;
    std::function<std::vector<double>(const std::vector<double>&)> gradient;
    std::vector<double> lower;
    std::vector<double> upper;
};

struct CoreResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    double kkt_residual = 0.0;
    std::vector<double> trace;
};

// SQP-style maximization over a box: BFGS curvature model, projected
// quasi-Newton step, Armijo backtracking with a sufficient-increase
// condition. Variables are affinely scaled to [0,1] internally.
CoreResult maximize_box(const BoxProblem& problem, const std::vector<double>& x0,
                        int max_iterations, double tolerance);

// Maximizes the composite objective over the bounds. Throws ContractError
// when the initial point is outside the bounds or the weights are invalid;
// non-convergence is reported via converged=false, not an exception.
OptimizationResult maximize(const WeightConfig& w, const ModelCoefficients& c,
                            const BoundsSet& b, const SolverConfig& cfg = {});

// Independent validation path: verifies that every partial derivative has
// a constant sign across a 3^9 grid over the box, then returns the corner
// those signs select. Zero partials fall back to the lower bound for cost
// variables and the upper bound for benefit variables.
OptimizationResult corner_oracle(const WeightConfig& w, const ModelCoefficients& c,
                                 const BoundsSet& b);

// Brute force: evaluates the full uniform grid (bounds included) with
// points_per_dim points per variable and returns the best grid point.
// points_per_dim must lie in [2, 6]. Ties resolve to the lowest grid index.
OptimizationResult grid_oracle(const WeightConfig& w, const ModelCoefficients& c,
                               const BoundsSet& b, int points_per_dim, int threads = 1);

} // namespace ecoopt::solver

#endif // ECOOPT_SOLVER_HPP
