// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ecoopt/core_model.hpp"
#include "ecoopt/datagen.hpp"
#include "ecoopt/experiments.hpp"
#include "ecoopt/preprocess.hpp"
#include "ecoopt/rng.hpp"
#include "ecoopt/sensitivity.hpp"
#include "ecoopt/solver.hpp"
#include "ecoopt/stats.hpp"

using namespace ecoopt;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

struct Criterion {
    int number;
    std::string description;
    std::vector<std::string> problems;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    Criterion(int n, std::string d) : number(n), description(std::move(d)) {}

    void require(bool ok, const std::string& what) {
        if (!ok) problems.push_back(what);
    }
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    ~Criterion() {
        if (problems.empty()) {
            std::printf("[PASS] criterion %2d: %s (%.1fs)\n", number, description.c_str(),
                        seconds());
        } else {
            ++g_failures;
            std::printf("[FAIL] criterion %2d: %s\n", number, description.c_str());
            for (const auto& p : problems) std::printf("       - %s\n", p.c_str());
        }
        std::fflush(stdout);
    }
};

DeploymentStrategy known_corner() {
    return {10.0, 100.0, 80.0, 100.0, 10.0, 1000.0, 50.0, 20.0, 100.0};
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void criterion_1_component_unit_points() {
    Criterion c(1, "component unit points R=1, E=1 (1e-12); S corner = 4.41488 (1e-5)");
    ModelCoefficients coeffs;
    DeploymentStrategy s;
    s.innovation_index = 100;
    s.market_stability = 10;
    s.ai_investment = 1000;
    c.require(std::abs(economic_resilience(s, coeffs) - 1.0) <= 1e-12,
              "R(100,10,1000) != 1: " + fmt(economic_resilience(s, coeffs)));
    DeploymentStrategy e;
    e.energy_consumption = 2000;
    e.carbon_emissions = 1000;
    e.water_usage = 5000;
    c.require(std::abs(environmental_cost(e, coeffs) - 1.0) <= 1e-12,
              "E(2000,1000,5000) != 1: " + fmt(environmental_cost(e, coeffs)));
    const double sv = sustainability_impact(known_corner(), coeffs);
    c.require(std::abs(sv - 4.41488) <= 1e-5, "S(10,100,80) = " + fmt(sv));
}

void criterion_2_gradient_check() {
    Criterion c(2, "analytic gradient vs central differences at 100 seeded points, rel < 1e-6");
    ModelCoefficients coeffs;
    const WeightConfig w{0.6, 0.3, 0.1};
    const BoundsSet b = BoundsSet::defaults();
    Rng rng(20240817);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::array<double, kNumVariables> pt;
        for (std::size_t i = 0; i < kNumVariables; ++i) {
            const double margin = 0.05 * (b[i].hi - b[i].lo);
            pt[i] = rng.uniform(b[i].lo + margin, b[i].hi - margin);
        }
        const auto s = DeploymentStrategy::from_array(pt);
        const auto analytic = objective_gradient(s, w, coeffs);
        for (std::size_t i = 0; i < kNumVariables; ++i) {
            const double h = 1e-5 * (b[i].hi - b[i].lo);
            auto hi = pt;
            auto lo = pt;
            hi[i] += h;
            lo[i] -= h;
            const double fd = (weighted_objective(DeploymentStrategy::from_array(hi), w, coeffs) -
                               weighted_objective(DeploymentStrategy::from_array(lo), w, coeffs)) /
                              (2.0 * h);
            worst = std::max(worst,
                             std::abs(analytic[i] - fd) / std::max(std::abs(analytic[i]), 1e-12));
        }
    }
    c.require(worst < 1e-6, "max relative error " + fmt(worst));
}

void criterion_3_solver_oracle_agreement() {
    Criterion c(3, "solver matches corner oracle on five configs; 5^9 grid never beats it");
    ModelCoefficients coeffs;
    const BoundsSet b = BoundsSet::defaults();
    for (const auto& [label, w] : sensitivity::default_weight_configs()) {
        const auto solved = solver::maximize(w, coeffs, b);
        const auto corner = solver::corner_oracle(w, coeffs, b);
        c.require(std::abs(solved.objective_value - corner.objective_value) < 1e-4,
                  label + ": objective gap " +
                      fmt(std::abs(solved.objective_value - corner.objective_value)));
        const auto xs = solved.optimum.to_array();
        const auto xo = corner.optimum.to_array();
        for (std::size_t i = 0; i < kNumVariables; ++i) {
            c.require(std::abs(xs[i] - xo[i]) <= 1e-4 * (b[i].hi - b[i].lo),
                      label + ": coordinate " + std::string(kVariableNames[i]) + " off by " +
                          fmt(std::abs(xs[i] - xo[i])));
        }
        const auto grid = solver::grid_oracle(w, coeffs, b, 5);
        c.require(grid.objective_value <= solved.objective_value + 1e-9,
                  label + ": grid beats solver by " +
                      fmt(grid.objective_value - solved.objective_value));
    }
    c.require(c.seconds() < 30.0, "runtime " + fmt(c.seconds()) + "s exceeds 30s");
}

void criterion_4_argmax_invariance() {
    Criterion c(4, "optimal strategy identical across all positive-weight configs");
    ModelCoefficients coeffs;
    const BoundsSet b = BoundsSet::defaults();
    const auto reference = known_corner();
    for (const auto& [label, w] : sensitivity::default_weight_configs()) {
        const auto solved = solver::maximize(w, coeffs, b);
        c.require(solved.optimum == reference, label + ": solver optimum moved");
    }
    Rng rng(555);
    for (int trial = 0; trial < 20; ++trial) {
        double a = rng.uniform(0.05, 1.0), bb = rng.uniform(0.05, 1.0),
               g = rng.uniform(0.05, 1.0);
        const double sum = a + bb + g;
        const WeightConfig w{a / sum, bb / sum, g / sum};
        const auto corner = solver::corner_oracle(w, coeffs, b);
        c.require(corner.optimum == reference,
                  "random positive config " + std::to_string(trial) + ": corner moved");
    }
}

void criterion_5_sensitivity() {
    Criterion c(5, "sensitivity: ai 42.34, renewable 35.15 (0.05); closed forms 1e-9; extremes");
    ModelCoefficients coeffs;
    const WeightConfig w{0.6, 0.3, 0.1};
    const BoundsSet b = BoundsSet::defaults();
    const auto rows = sensitivity::parameter_sensitivity(known_corner(), w, coeffs, b, 0.5);

    auto coefficient = [&](std::string_view name) {
        for (const auto& r : rows) {
            if (r.parameter == name) return r.coefficient_pct;
        }
        return std::nan("");
    };
    c.require(std::abs(coefficient("ai_adoption") - 42.34) <= 0.05,
              "ai_adoption = " + fmt(coefficient("ai_adoption")));
    c.require(std::abs(coefficient("renewable_energy") - 35.15) <= 0.05,
              "renewable_energy = " + fmt(coefficient("renewable_energy")));

    const double f = composite_objective(known_corner(), w, coeffs);
    const struct {
        const char* name;
        double g, norm, base;
    } linear_vars[] = {{"energy_consumption", coeffs.g1, coeffs.norm_energy, 50.0},
                       {"carbon_emissions", coeffs.g2, coeffs.norm_carbon, 20.0},
                       {"water_usage", coeffs.g3, coeffs.norm_water, 100.0}};
    for (const auto& v : linear_vars) {
        const double closed = 100.0 * w.gamma * v.g * (0.5 * v.base) / v.norm / std::abs(f);
        c.require(std::abs(coefficient(v.name) - closed) <= 1e-9,
                  std::string(v.name) + " closed form gap " +
                      fmt(std::abs(coefficient(v.name) - closed)));
    }
    c.require(rows.front().parameter == "ai_adoption",
              "first row is " + rows.front().parameter);
    c.require(rows.back().parameter == "water_usage", "last row is " + rows.back().parameter);
}

void criterion_6_datagen_fidelity() {
    Criterion c(6, "seed-42 sustainability table: 5 correlations within 0.05, 5 slopes within 15%");
    const auto specs = datagen::builtin_specs(42);
    const auto report = datagen::generate_full(specs[1]);
    c.require(report.table.n_rows() == 530, "row count");
    c.require(report.correlation_stats.size() == 5, "correlation target count");
    for (const auto& cs : report.correlation_stats) {
        c.require(std::abs(cs.realized - cs.target) <= 0.05,
                  cs.col_a + "~" + cs.col_b + " realized " + fmt(cs.realized) + " target " +
                      fmt(cs.target));
    }
    c.require(report.trend_stats.size() == 5, "trend target count");
    for (const auto& ts : report.trend_stats) {
        c.require(std::abs(ts.realized - ts.target) <= 0.15 * std::abs(ts.target),
                  ts.column + " slope " + fmt(ts.realized) + " target " + fmt(ts.target));
    }
    c.require(c.seconds() < 5.0, "runtime " + fmt(c.seconds()) + "s exceeds 5s");
}

void criterion_7_preprocess_oracle() {
    Criterion c(7, "preprocess: quartiles, fences, winsorize, impute, scale match hand values");
    DataTable t;
    t.columns = {{"x", ColumnKind::numeric}};
    for (double v : {1.0, 2.0, 3.0, 4.0, 100.0}) t.rows.push_back({Cell{v}});
    preprocess::PipelineConfig cfg;
    cfg.scale = false;
    const auto fitted = preprocess::fit(t, cfg);
    c.require(fitted.stats[0].q1 == 2.0, "Q1 = " + fmt(fitted.stats[0].q1));
    c.require(fitted.stats[0].q3 == 4.0, "Q3 = " + fmt(fitted.stats[0].q3));
    c.require(fitted.stats[0].lower_fence == -1.0, "lower fence");
    c.require(fitted.stats[0].upper_fence == 7.0, "upper fence");
    const auto wins = preprocess::transform(fitted, t);
    c.require(std::get<double>(wins.rows[4][0]) == 7.0, "winsorized tail value");

    DataTable m;
    m.columns = {{"x", ColumnKind::numeric}};
    m.rows = {{Cell{1.0}}, {Cell{std::monostate{}}}, {Cell{3.0}}};
    const auto imputed = preprocess::transform(preprocess::fit(m, cfg), m);
    c.require(std::get<double>(imputed.rows[1][0]) == 2.0, "imputed mean");

    DataTable z;
    z.columns = {{"x", ColumnKind::numeric}};
    z.rows = {{Cell{0.0}}, {Cell{10.0}}};
    const auto scaled = preprocess::transform(preprocess::fit(z), z);
    c.require(std::get<double>(scaled.rows[0][0]) == -1.0 &&
                  std::get<double>(scaled.rows[1][0]) == 1.0,
              "z-scores of [0,10]");
}

void criterion_8_surrogate_ordering() {
    Criterion c(8, "CV R2: linear < forest < boosting, boosting >= 0.98; paired t p < 0.05");
    experiments::ExperimentContext ctx;
    ctx.seed = 42;
    ctx.write_files = false;
    const auto cmp = experiments::run_compare(ctx);

    auto r2_of = [&](std::string_view name) {
        for (const auto& m : cmp.models) {
            if (m.name == name) return m.cv_mean.r2;
        }
        return std::nan("");
    };
    const double linear = r2_of("linear_regression");
    const double forest = r2_of("random_forest");
    const double boosting = r2_of("gradient_boosting");
    c.require(linear < forest, "linear " + fmt(linear) + " !< forest " + fmt(forest));
    c.require(forest < boosting, "forest " + fmt(forest) + " !< boosting " + fmt(boosting));
    c.require(boosting >= 0.98, "boosting R2 " + fmt(boosting) + " below 0.98");

    bool found = false;
    for (const auto& t : cmp.t_tests) {
        if (t.baseline == "linear_regression" && t.challenger == "gradient_boosting") {
            found = true;
            c.require(t.test.p_value < 0.05, "p = " + fmt(t.test.p_value));
            c.require(t.test.t_statistic > 0.0, "t direction");
        }
    }
    c.require(found, "boosting-vs-linear comparison missing");
    c.require(c.seconds() < 60.0, "runtime " + fmt(c.seconds()) + "s exceeds 60s");
}

// quadrature oracle for the two-sided t-tail (independent of stats::)
double t_density(double x, double df) {
    const double norm = std::exp(std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0)) /
                        std::sqrt(df * std::numbers::pi);
    return norm * std::pow(1.0 + x * x / df, -(df + 1.0) / 2.0);
}

double simpson_body(double hi, double df) {
    // plain composite Simpson on [0, hi]; 20k panels is plenty at 5e-4
    const int n = 20000;
    const double h = hi / n;
    double acc = t_density(0.0, df) + t_density(hi, df);
    for (int i = 1; i < n; ++i) acc += t_density(i * h, df) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

void criterion_9_stats_oracles() {
    Criterion c(9, "stats: pearson 0.8; t = 2*sqrt(3); d = 2; p = 0.0742 vs quadrature (5e-4)");
    c.require(std::abs(stats::pearson_r({1, 2, 3, 4}, {1, 3, 2, 4}) - 0.8) <= 1e-12,
              "pearson example");
    const auto t = stats::paired_t_test({2, 4, 6}, {1, 2, 3});
    c.require(std::abs(t.t_statistic - 2.0 * std::sqrt(3.0)) <= 1e-12,
              "t = " + fmt(t.t_statistic));
    c.require(std::abs(t.cohens_d - 2.0) <= 1e-12, "cohens d = " + fmt(t.cohens_d));
    const double quad_p = 1.0 - 2.0 * simpson_body(t.t_statistic, 2.0);
    c.require(std::abs(t.p_value - 0.0742) <= 5e-4, "p = " + fmt(t.p_value));
    c.require(std::abs(t.p_value - quad_p) <= 5e-4,
              "p " + fmt(t.p_value) + " vs quadrature " + fmt(quad_p));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void criterion_10_cli_determinism(const char* cli) {
    Criterion c(10, "gen-data, optimize, experiment compare byte-identical across reruns");
    const fs::path root = fs::temp_directory_path() / "ecoopt_acceptance";
    fs::remove_all(root);
    fs::create_directories(root);

    auto run = [&](const std::string& args) {
        const std::string cmd = std::string(cli) + " " + args + " >/dev/null 2>&1";
        return WEXITSTATUS(std::system(cmd.c_str()));
    };
    struct Job {
        const char* name;
        std::string args;
        std::vector<std::string> files;
    };
    const Job jobs[] = {
        {"gen_data", "gen-data --all --seed 42 --threads 1 --no-timestamp",
         {"llm_energy.csv", "sustainability.csv", "renewable_market.csv", "entrepreneurship.csv",
          "manifest.json"}},
        {"optimize", "optimize --weights 0.6,0.3,0.1 --seed 42 --threads 1 --no-timestamp",
         {"optimize_result.json", "optimize_report.md"}},
        {"experiment_compare", "experiment compare --seed 42 --threads 1 --no-timestamp",
         {"compare_methods.csv", "compare_ttests.csv", "compare_report.md"}},
    };
    for (const auto& job : jobs) {
        const fs::path a = root / (std::string(job.name) + "_a");
        const fs::path b = root / (std::string(job.name) + "_b");
        const int ra = run(job.args + " --out " + a.string());
        const int rb = run(job.args + " --out " + b.string());
        c.require(ra == 0 && rb == 0, std::string(job.name) + " exited nonzero");
        for (const auto& f : job.files) {
            c.require(!slurp(a / f).empty() && slurp(a / f) == slurp(b / f),
                      std::string(job.name) + ": " + f + " differs between runs");
        }
    }
    fs::remove_all(root);
}

} // namespace

int main(int argc, char** argv) {
    const char* cli = ECOOPT_CLI_PATH;
    if (argc > 1) cli = argv[1];

    std::printf("acceptance suite (cli: %s)\n", cli);
    criterion_1_component_unit_points();
    criterion_2_gradient_check();
    criterion_3_solver_oracle_agreement();
    criterion_4_argmax_invariance();
    criterion_5_sensitivity();
    criterion_6_datagen_fidelity();
    criterion_7_preprocess_oracle();
    criterion_8_surrogate_ordering();
    criterion_9_stats_oracles();
    criterion_10_cli_determinism(cli);

    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criteria FAILED\n", g_failures);
    return 1;
}
