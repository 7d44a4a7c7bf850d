#include "ecoopt/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <thread>

#include "ecoopt/errors.hpp"

namespace ecoopt::solver {

namespace {

constexpr double kArmijoC1 = 1e-4;
constexpr double kLineSearchShrink = 0.5;
constexpr int kMaxBacktracks = 60;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

double inf_norm(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

// Gradient components that push a bound-active variable further out of the
// box carry no first-order information; zero them.
std::vector<double> projected_gradient(const std::vector<double>& g,
                                       const std::vector<double>& y) {
    std::vector<double> pg(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const bool blocked_low = y[i] <= 0.0 && g[i] < 0.0;
        const bool blocked_high = y[i] >= 1.0 && g[i] > 0.0;
        pg[i] = (blocked_low || blocked_high) ? 0.0 : g[i];
    }
    return pg;
}

std::vector<double> clamp_unit(std::vector<double> y) {
    for (double& v : y) v = std::min(std::max(v, 0.0), 1.0);
    return y;
}

class InverseHessian {
public:
    explicit InverseHessian(std::size_t n) : n_(n) { reset(1.0); }

    void reset(double scale) {
        h_.assign(n_ * n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) h_[i * n_ + i] = scale;
    }

    std::vector<double> apply(const std::vector<double>& g) const {
        std::vector<double> out(n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n_; ++j) s += h_[i * n_ + j] * g[j];
            out[i] = s;
        }
        return out;
    }

    // BFGS update for the inverse Hessian of the negated objective.
    // s = step, yk = grad_old - grad_new (ascent convention).
    void update(const std::vector<double>& s, const std::vector<double>& yk) {
        const double sy = dot(s, yk);
        const double rho = 1.0 / sy;
        std::vector<double> hy = apply(yk);
        const double yhy = dot(yk, hy);
        // H <- (I - rho s y')H(I - rho y s') + rho s s'
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                h_[i * n_ + j] += rho * rho * yhy * s[i] * s[j] -
                                  rho * (s[i] * hy[j] + hy[i] * s[j]) +
                                  rho * s[i] * s[j];
            }
        }
    }

private:
    std::size_t n_;
    std::vector<double> h_;
};

} // namespace

CoreResult maximize_box(const BoxProblem& problem, const std::vector<double>& x0,
                        int max_iterations, double tolerance) {
    const std::size_t n = problem.lower.size();
    if (problem.upper.size() != n || x0.size() != n) {
        throw ContractError("box problem dimensions disagree");
    }
    if (max_iterations < 1 || !(tolerance > 0.0)) {
        throw ContractError("max_iterations must be >= 1 and tolerance positive");
    }

    std::vector<double> range(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(problem.lower[i] < problem.upper[i])) {
            throw ContractError("box lower bound must be below upper bound");
        }
        range[i] = problem.upper[i] - problem.lower[i];
    }

    auto unscale = [&](const std::vector<double>& y) {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) {
            // exact bound values when a coordinate is active
            x[i] = y[i] <= 0.0   ? problem.lower[i]
                   : y[i] >= 1.0 ? problem.upper[i]
                                 : problem.lower[i] + y[i] * range[i];
        }
        return x;
    };
    auto value_at = [&](const std::vector<double>& y) { return problem.objective(unscale(y)); };
    auto gradient_at = [&](const std::vector<double>& y) {
        std::vector<double> g = problem.gradient(unscale(y));
        for (std::size_t i = 0; i < n; ++i) g[i] *= range[i];
        return g;
    };

    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = std::min(std::max((x0[i] - problem.lower[i]) / range[i], 0.0), 1.0);
    }

    CoreResult result;
    double f = value_at(y);
    std::vector<double> g = gradient_at(y);
    result.trace.push_back(f);

    InverseHessian hessian(n);
    int iter = 0;
    for (; iter < max_iterations; ++iter) {
        const std::vector<double> pg = projected_gradient(g, y);
        result.kkt_residual = inf_norm(pg);
        if (result.kkt_residual <= tolerance) {
            result.converged = true;
            break;
        }

        // Quasi-Newton direction first; fall back to the projected gradient
        // when the model direction makes no progress along the box.
        bool accepted = false;
        std::vector<double> y_next;
        double f_next = f;
        for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
            const std::vector<double> dir = attempt == 0 ? hessian.apply(g) : pg;
            double t = 1.0;
            for (int bt = 0; bt < kMaxBacktracks; ++bt, t *= kLineSearchShrink) {
                std::vector<double> trial(n);
                for (std::size_t i = 0; i < n; ++i) trial[i] = y[i] + t * dir[i];
                trial = clamp_unit(std::move(trial));
                std::vector<double> step(n);
                for (std::size_t i = 0; i < n; ++i) step[i] = trial[i] - y[i];
                const double predicted = dot(g, step);
                if (predicted <= 0.0 || inf_norm(step) == 0.0) continue;
                const double f_trial = value_at(trial);
                if (f_trial >= f + kArmijoC1 * predicted) {
                    y_next = std::move(trial);
                    f_next = f_trial;
                    accepted = true;
                    break;
                }
            }
        }
        if (!accepted) break; // no ascent step of measurable size exists

        std::vector<double> g_next = gradient_at(y_next);
        std::vector<double> s(n), yk(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = y_next[i] - y[i];
            yk[i] = g[i] - g_next[i];
        }
        if (dot(s, yk) > 1e-10 * norm2(s) * norm2(yk)) {
            hessian.update(s, yk);
        } else {
            hessian.reset(1.0 / std::max(norm2(g_next), 1e-12));
        }

        y = std::move(y_next);
        f = f_next;
        g = std::move(g_next);
        result.trace.push_back(f);
        if (inf_norm(s) <= tolerance && result.kkt_residual <= tolerance) break;
    }

    const std::vector<double> pg = projected_gradient(g, y);
    result.kkt_residual = inf_norm(pg);
    result.converged = result.kkt_residual <= tolerance;
    result.iterations = iter;
    result.x = unscale(y);
    result.value = f;
    return result;
}

namespace {

OptimizationResult make_result(const DeploymentStrategy& s, const WeightConfig& w,
                               const ModelCoefficients& c) {
    OptimizationResult r;
    r.optimum = s;
    r.sustainability = sustainability_impact(s, c);
    r.resilience = economic_resilience(s, c);
    r.environmental_cost = environmental_cost(s, c);
    r.objective_value = w.alpha * r.sustainability + w.beta * r.resilience -
                        w.gamma * r.environmental_cost;
    return r;
}

// Projected-gradient infinity norm at a strategy, in scaled coordinates.
double kkt_at(const DeploymentStrategy& s, const WeightConfig& w, const ModelCoefficients& c,
              const BoundsSet& b) {
    const auto g = objective_gradient(s, w, c);
    const auto x = s.to_array();
    double worst = 0.0;
    for (std::size_t i = 0; i < kNumVariables; ++i) {
        const double scaled = g[i] * (b[i].hi - b[i].lo);
        const bool blocked_low = x[i] <= b[i].lo && scaled < 0.0;
        const bool blocked_high = x[i] >= b[i].hi && scaled > 0.0;
        if (!blocked_low && !blocked_high) worst = std::max(worst, std::abs(scaled));
    }
    return worst;
}

} // namespace

OptimizationResult maximize(const WeightConfig& w, const ModelCoefficients& c,
                            const BoundsSet& b, const SolverConfig& cfg) {
    w.validate();
    b.validate();
    if (!b.contains(cfg.initial_strategy)) {
        throw ContractError("initial strategy is outside the bounds");
    }
    if (cfg.max_iterations < 1 || !(cfg.tolerance > 0.0)) {
        throw ContractError("max_iterations must be >= 1 and tolerance positive");
    }

    BoxProblem problem;
    problem.lower.resize(kNumVariables);
    problem.upper.resize(kNumVariables);
    for (std::size_t i = 0; i < kNumVariables; ++i) {
        problem.lower[i] = b[i].lo;
        problem.upper[i] = b[i].hi;
    }
    problem.objective = [&](const std::vector<double>& x) {
        std::array<double, kNumVariables> a;
        std::copy_n(x.begin(), kNumVariables, a.begin());
        return weighted_objective(DeploymentStrategy::from_array(a), w, c);
    };
    problem.gradient = [&](const std::vector<double>& x) {
        std::array<double, kNumVariables> a;
        std::copy_n(x.begin(), kNumVariables, a.begin());
        const auto g = objective_gradient(DeploymentStrategy::from_array(a), w, c);
        return std::vector<double>(g.begin(), g.end());
    };

    const auto x0 = cfg.initial_strategy.to_array();
    CoreResult core = maximize_box(problem, std::vector<double>(x0.begin(), x0.end()),
                                   cfg.max_iterations, cfg.tolerance);

    std::array<double, kNumVariables> xa;
    std::copy_n(core.x.begin(), kNumVariables, xa.begin());
    OptimizationResult r = make_result(DeploymentStrategy::from_array(xa), w, c);
    r.iterations = core.iterations;
    r.converged = core.converged;
    r.kkt_residual = core.kkt_residual;
    r.objective_trace = std::move(core.trace);
    return r;
}

OptimizationResult corner_oracle(const WeightConfig& w, const ModelCoefficients& c,
                                 const BoundsSet& b) {
    b.validate();

    // Sample gradient signs on the 3^9 grid {lo, mid, hi} per variable.
    std::array<std::array<double, 3>, kNumVariables> levels;
    for (std::size_t i = 0; i < kNumVariables; ++i) {
        levels[i] = {b[i].lo, 0.5 * (b[i].lo + b[i].hi), b[i].hi};
    }
    std::array<bool, kNumVariables> has_pos{};
    std::array<bool, kNumVariables> has_neg{};

    std::array<std::size_t, kNumVariables> digit{};
    const std::size_t total = 19683; // 3^9
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::array<double, kNumVariables> point;
        std::size_t rem = idx;
        for (std::size_t i = 0; i < kNumVariables; ++i) {
            digit[i] = rem % 3;
            rem /= 3;
            point[i] = levels[i][digit[i]];
        }
        const auto g = objective_gradient(DeploymentStrategy::from_array(point), w, c);
        for (std::size_t i = 0; i < kNumVariables; ++i) {
            if (g[i] > 0.0) has_pos[i] = true;
            if (g[i] < 0.0) has_neg[i] = true;
        }
    }

    std::array<double, kNumVariables> corner;
    for (std::size_t i = 0; i < kNumVariables; ++i) {
        if (has_pos[i] && has_neg[i]) {
            std::ostringstream msg;
            msg << "objective is not coordinate-wise monotone in " << kVariableNames[i];
            throw OracleInapplicableError(msg.str());
        }
        if (has_pos[i]) {
            corner[i] = b[i].hi;
        } else if (has_neg[i]) {
            corner[i] = b[i].lo;
        } else {
            // flat partial: improvement direction is down for costs, up for benefits
            corner[i] = kIsCostVariable[i] ? b[i].lo : b[i].hi;
        }
    }

    OptimizationResult r = make_result(DeploymentStrategy::from_array(corner), w, c);
    r.iterations = 0;
    r.kkt_residual = kkt_at(r.optimum, w, c, b);
    r.converged = r.kkt_residual <= 1e-8;
    return r;
}

OptimizationResult grid_oracle(const WeightConfig& w, const ModelCoefficients& c,
                               const BoundsSet& b, int points_per_dim, int threads) {
    b.validate();
    if (points_per_dim < 2 || points_per_dim > 6) {
        throw ContractError("points_per_dim must lie in [2, 6]");
    }
    threads = std::max(threads, 1);

    const std::size_t ppd = static_cast<std::size_t>(points_per_dim);
    std::array<std::vector<double>, kNumVariables> levels;
    for (std::size_t i = 0; i < kNumVariables; ++i) {
        levels[i].resize(ppd);
        for (std::size_t k = 0; k < ppd; ++k) {
            levels[i][k] = k == 0         ? b[i].lo
                           : k == ppd - 1 ? b[i].hi
                                          : b[i].lo + static_cast<double>(k) * (b[i].hi - b[i].lo) /
                                                          static_cast<double>(ppd - 1);
        }
    }

    std::uint64_t total = 1;
    for (std::size_t i = 0; i < kNumVariables; ++i) total *= ppd;

    struct Best {
        double value = -std::numeric_limits<double>::infinity();
        std::uint64_t index = 0;
    };
    auto scan = [&](std::uint64_t begin, std::uint64_t end) {
        Best best;
        std::array<double, kNumVariables> point;
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            std::uint64_t rem = idx;
            // most-significant digit = variable 0, so idx order is lexicographic
            for (std::size_t i = kNumVariables; i-- > 0;) {
                point[i] = levels[i][rem % ppd];
                rem /= ppd;
            }
            const double v = weighted_objective(DeploymentStrategy::from_array(point), w, c);
            if (v > best.value) {
                best.value = v;
                best.index = idx;
            }
        }
        return best;
    };

    Best best;
    if (threads == 1) {
        best = scan(0, total);
    } else {
        const std::uint64_t chunk = (total + threads - 1) / threads;
        std::vector<Best> partial(threads);
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            const std::uint64_t begin = static_cast<std::uint64_t>(t) * chunk;
            const std::uint64_t end = std::min(begin + chunk, total);
            pool.emplace_back([&, t, begin, end] { partial[t] = scan(begin, end); });
        }
        for (auto& th : pool) th.join();
        // merge in chunk order: strictly greater value wins, ties keep the
        // earlier (lower) grid index
        best = partial[0];
        for (int t = 1; t < threads; ++t) {
            if (partial[t].value > best.value) best = partial[t];
        }
    }

    std::array<double, kNumVariables> point;
    std::uint64_t rem = best.index;
    for (std::size_t i = kNumVariables; i-- > 0;) {
        point[i] = levels[i][rem % ppd];
        rem /= ppd;
    }
    OptimizationResult r = make_result(DeploymentStrategy::from_array(point), w, c);
    r.iterations = 0;
    r.kkt_residual = kkt_at(r.optimum, w, c, b);
    r.converged = r.kkt_residual <= 1e-8;
    return r;
}

} // namespace ecoopt::solver
