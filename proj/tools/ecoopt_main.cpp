// ecoopt: multi-objective AI deployment optimization toolkit.
//
// Subcommands: gen-data | optimize | sweep | sensitivity | experiment.
// All outputs are deterministic for a fixed --seed (and --threads 1);
// timestamps appear only in the gen-data manifest and can be suppressed
// with --no-timestamp.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>

#include "ecoopt/core_model.hpp"
#include "ecoopt/data_table.hpp"
#include "ecoopt/datagen.hpp"
#include "ecoopt/errors.hpp"
#include "ecoopt/experiments.hpp"
#include "ecoopt/json_io.hpp"
#include "ecoopt/report.hpp"
#include "ecoopt/sensitivity.hpp"
#include "ecoopt/solver.hpp"

namespace {

using nlohmann::json;
using namespace ecoopt;

constexpr const char* kVersion = "0.1.0";

// Values previously reported for this optimization problem; the optimize
// report compares the solved optimum against them.
constexpr double kReportedAiInvestment = 202.48;
constexpr double kReportedEnergy = 798.9;
constexpr double kReportedCarbon = 297.8;
constexpr double kReportedWater = 1499.8;
constexpr double kReportedObjective = 2.05;

struct RunConfig {
    std::uint64_t seed = 42;
    WeightConfig weights{0.6, 0.3, 0.1};
    std::filesystem::path out_dir = "out";
    LogBase log_base = LogBase::natural;
    int threads = 1;
    bool no_timestamp = false;
    double tolerance = 1e-8;
    int max_iterations = 500;
    double delta = 0.5;
    double missing_fraction = 0.0;
};

// tracks which fields the command line set explicitly; those win over the
// config file
struct FlagPresence {
    bool seed = false, weights = false, out_dir = false, log_base = false, threads = false,
         no_timestamp = false, tolerance = false, max_iterations = false, delta = false,
         missing_fraction = false;
};

LogBase parse_log_base(const std::string& value) {
    if (value == "e") return LogBase::natural;
    if (value == "10") return LogBase::base10;
    throw ContractError("log base must be 'e' or '10'");
}

WeightConfig parse_weights(const std::string& csv) {
    WeightConfig w;
    if (std::sscanf(csv.c_str(), "%lf,%lf,%lf", &w.alpha, &w.beta, &w.gamma) != 3) {
        throw ContractError("weights must be three comma-separated numbers a,b,c");
    }
    return w;
}

void apply_config_file(const std::filesystem::path& path, RunConfig& cfg,
                       const FlagPresence& set) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ContractError("config file is not valid JSON: " + std::string(e.what()));
    }
    static const std::set<std::string> allowed = {
        "seed",       "weights", "out_dir",        "log_base",         "threads",
        "no_timestamp", "tolerance", "max_iterations", "delta", "missing_fraction"};
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) {
            throw ContractError("unknown config key '" + key + "'");
        }
        (void)value;
    }
    if (j.contains("seed") && !set.seed) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("weights") && !set.weights) {
        const auto arr = j.at("weights");
        if (!arr.is_array() || arr.size() != 3) {
            throw ContractError("config 'weights' must be an array of three numbers");
        }
        cfg.weights = {arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>()};
    }
    if (j.contains("out_dir") && !set.out_dir) cfg.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("log_base") && !set.log_base) {
        cfg.log_base = parse_log_base(j.at("log_base").get<std::string>());
    }
    if (j.contains("threads") && !set.threads) cfg.threads = j.at("threads").get<int>();
    if (j.contains("no_timestamp") && !set.no_timestamp) {
        cfg.no_timestamp = j.at("no_timestamp").get<bool>();
    }
    if (j.contains("tolerance") && !set.tolerance) cfg.tolerance = j.at("tolerance").get<double>();
    if (j.contains("max_iterations") && !set.max_iterations) {
        cfg.max_iterations = j.at("max_iterations").get<int>();
    }
    if (j.contains("delta") && !set.delta) cfg.delta = j.at("delta").get<double>();
    if (j.contains("missing_fraction") && !set.missing_fraction) {
        cfg.missing_fraction = j.at("missing_fraction").get<double>();
    }
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json stats_json(const datagen::GenerationReport& rep) {
    json cols = json::array();
    for (const auto& c : rep.column_stats) {
        cols.push_back({{"column", c.column},
                        {"target_mean", c.target_mean},
                        {"realized_mean", c.realized_mean},
                        {"target_std", c.target_std},
                        {"realized_std", c.realized_std},
                        {"min", c.min},
                        {"max", c.max}});
    }
    json corrs = json::array();
    for (const auto& c : rep.correlation_stats) {
        corrs.push_back({{"pair", {c.col_a, c.col_b}},
                         {"target_r", c.target},
                         {"realized_r", c.realized}});
    }
    json trends = json::array();
    for (const auto& t : rep.trend_stats) {
        trends.push_back(
            {{"column", t.column}, {"target_slope", t.target}, {"realized_slope", t.realized}});
    }
    return {{"name", rep.table.name},
            {"rows", rep.table.n_rows()},
            {"columns", rep.table.n_cols()},
            {"attempts", rep.attempts},
            {"calibration_iterations", rep.calibration_iterations},
            {"column_stats", std::move(cols)},
            {"correlations", std::move(corrs)},
            {"trends", std::move(trends)}};
}

int cmd_gen_data(const RunConfig& cfg, const std::string& only_table,
                 const std::string& spec_file) {
    std::vector<datagen::GeneratorSpec> specs;
    if (!spec_file.empty()) {
        std::ifstream in(spec_file);
        if (!in) throw IoError("cannot open spec file " + spec_file);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw ContractError("spec file is not valid JSON: " + std::string(e.what()));
        }
        auto spec = j.get<datagen::GeneratorSpec>();
        spec.seed = cfg.seed;
        specs.push_back(std::move(spec));
    } else {
        specs = datagen::builtin_specs(cfg.seed);
    }

    std::filesystem::create_directories(cfg.out_dir);
    json manifest{{"version", kVersion},
                  {"seed", cfg.seed},
                  {"missing_fraction", cfg.missing_fraction},
                  {"tables", json::array()}};
    if (!cfg.no_timestamp) manifest["timestamp"] = utc_timestamp();

    bool found = only_table.empty();
    for (const auto& spec : specs) {
        if (!only_table.empty() && spec.table_name != only_table) continue;
        found = true;
        auto rep = datagen::generate_full(spec);
        DataTable table = cfg.missing_fraction > 0.0
                              ? datagen::inject_missing(rep.table, cfg.missing_fraction, cfg.seed)
                              : rep.table;
        const auto path = cfg.out_dir / (spec.table_name + ".csv");
        write_csv(table, path);
        manifest["tables"].push_back(stats_json(rep));
        std::cout << "wrote " << path.string() << " (" << table.n_rows() << " rows)\n";
    }
    if (!found) throw ContractError("unknown table '" + only_table + "'");

    const auto manifest_path = cfg.out_dir / "manifest.json";
    report::write_text_file(manifest_path, manifest.dump(2) + "\n");
    std::cout << "wrote " << manifest_path.string() << "\n";
    return 0;
}

const char* unit_of(std::size_t var) {
    switch (var) {
        case kAiAdoption: return "scale (1-10)";
        case kRenewableEnergy: return "percent";
        case kEfficiencyGain: return "percent";
        case kInnovationIndex: return "scale (0-100)";
        case kMarketStability: return "scale (1-10)";
        case kAiInvestment: return "USD per capita";
        case kEnergyConsumption: return "MWh";
        case kCarbonEmissions: return "tons CO2";
        default: return "liters";
    }
}

int cmd_optimize(const RunConfig& cfg) {
    ModelCoefficients coeffs;
    coeffs.log_base = cfg.log_base;
    coeffs.validate();
    const BoundsSet bounds = BoundsSet::defaults();
    solver::SolverConfig solver_cfg;
    solver_cfg.tolerance = cfg.tolerance;
    solver_cfg.max_iterations = cfg.max_iterations;

    const auto solved = solver::maximize(cfg.weights, coeffs, bounds, solver_cfg);
    const auto oracle = solver::corner_oracle(cfg.weights, coeffs, bounds);

    bool agree = std::abs(solved.objective_value - oracle.objective_value) < 1e-4;
    const auto xs = solved.optimum.to_array();
    const auto xo = oracle.optimum.to_array();
    for (std::size_t i = 0; i < kNumVariables; ++i) {
        if (std::abs(xs[i] - xo[i]) > 1e-4 * (bounds[i].hi - bounds[i].lo)) agree = false;
    }

    const std::string note =
        "Reference results published for this problem report ai_investment=" +
        format_double(kReportedAiInvestment) + ", energy_consumption=" +
        format_double(kReportedEnergy) + ", carbon_emissions=" + format_double(kReportedCarbon) +
        ", water_usage=" + format_double(kReportedWater) + " and objective " +
        format_double(kReportedObjective) +
        ". Those values sit near the default initial point, not at a stationary point: the "
        "objective is strictly monotone in every variable over the bounds, so the maximizer is "
        "the corner reported here and the reference values are not reproducible from the model.";

    json out{{"version", kVersion},
             {"weights", cfg.weights},
             {"log_base", cfg.log_base == LogBase::natural ? "e" : "10"},
             {"solver", solved},
             {"corner_oracle", oracle},
             {"agreement", agree},
             {"reference_note", note}};

    std::filesystem::create_directories(cfg.out_dir);
    const auto json_path = cfg.out_dir / "optimize_result.json";
    report::write_text_file(json_path, out.dump(2) + "\n");

    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < kNumVariables; ++i) {
        rows.push_back({std::string(kVariableNames[i]), report::format_fixed(xs[i], 2),
                        unit_of(i)});
    }
    std::string md = "# Optimal deployment strategy\n\n";
    md += report::markdown_table({"Parameter", "Optimal value", "Unit"}, rows);
    md += "\nObjective value: " + report::format_fixed(solved.objective_value, 5) + " (S=" +
          report::format_fixed(solved.sustainability, 5) + ", R=" +
          report::format_fixed(solved.resilience, 5) + ", E=" +
          report::format_fixed(solved.environmental_cost, 5) + ")\n\n";
    md += "Solver " + std::string(solved.converged ? "converged" : "did NOT converge") + " in " +
          std::to_string(solved.iterations) + " iterations (KKT residual " +
          format_double(solved.kkt_residual) + "); corner-oracle agreement: " +
          (agree ? "yes" : "NO") + ".\n\n";
    md += "Note: " + note + "\n";
    const auto md_path = cfg.out_dir / "optimize_report.md";
    report::write_text_file(md_path, md);

    std::cout << "wrote " << json_path.string() << "\nwrote " << md_path.string() << "\n";
    std::cout << "objective " << format_double(solved.objective_value)
              << (solved.converged ? "" : " (not converged)") << "\n";
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    ModelCoefficients coeffs;
    coeffs.log_base = cfg.log_base;
    const BoundsSet bounds = BoundsSet::defaults();
    solver::SolverConfig solver_cfg;
    solver_cfg.tolerance = cfg.tolerance;
    solver_cfg.max_iterations = cfg.max_iterations;

    const auto rows =
        sensitivity::sweep_weights(sensitivity::default_weight_configs(), coeffs, bounds, solver_cfg);

    std::filesystem::create_directories(cfg.out_dir);
    std::string csv = "strategy,alpha,beta,gamma,objective,ai_investment";
    for (std::size_t i = 0; i < kNumVariables; ++i) {
        if (i != kAiInvestment) csv += "," + std::string(kVariableNames[i]);
    }
    csv += "\n";
    std::vector<std::vector<std::string>> md_rows;
    for (const auto& row : rows) {
        const auto x = row.optimum.to_array();
        csv += row.label + "," + format_double(row.weights.alpha) + "," +
               format_double(row.weights.beta) + "," + format_double(row.weights.gamma) + "," +
               format_double(row.objective) + "," + format_double(x[kAiInvestment]);
        for (std::size_t i = 0; i < kNumVariables; ++i) {
            if (i != kAiInvestment) csv += "," + format_double(x[i]);
        }
        csv += "\n";
        md_rows.push_back({row.label, report::format_fixed(row.weights.alpha, 2),
                           report::format_fixed(row.weights.beta, 2),
                           report::format_fixed(row.weights.gamma, 2),
                           report::format_fixed(row.objective, 5),
                           report::format_fixed(x[kAiInvestment], 2)});
    }
    const auto csv_path = cfg.out_dir / "weight_sweep.csv";
    report::write_text_file(csv_path, csv);
    const auto md_path = cfg.out_dir / "weight_sweep.md";
    report::write_text_file(
        md_path, "# Weight sweep\n\n" + report::markdown_table({"Strategy", "alpha", "beta",
                                                                "gamma", "Objective",
                                                                "AI investment"},
                                                               md_rows));
    std::cout << "wrote " << csv_path.string() << "\nwrote " << md_path.string() << "\n";
    return 0;
}

int cmd_sensitivity(const RunConfig& cfg) {
    ModelCoefficients coeffs;
    coeffs.log_base = cfg.log_base;
    const BoundsSet bounds = BoundsSet::defaults();
    solver::SolverConfig solver_cfg;
    solver_cfg.tolerance = cfg.tolerance;
    solver_cfg.max_iterations = cfg.max_iterations;

    const auto solved = solver::maximize(cfg.weights, coeffs, bounds, solver_cfg);
    const auto rows =
        sensitivity::parameter_sensitivity(solved.optimum, cfg.weights, coeffs, bounds, cfg.delta);

    std::filesystem::create_directories(cfg.out_dir);
    std::string csv = "parameter,coefficient_pct,level\n";
    std::vector<std::vector<std::string>> md_rows;
    std::vector<std::pair<std::string, double>> bars;
    for (const auto& row : rows) {
        csv += row.parameter + "," + format_double(row.coefficient_pct) + "," +
               sensitivity::level_name(row.level) + "\n";
        md_rows.push_back({row.parameter,
                           "±" + report::format_fixed(row.coefficient_pct, 2) + "%",
                           sensitivity::level_name(row.level)});
        bars.emplace_back(row.parameter, row.coefficient_pct);
    }
    const auto csv_path = cfg.out_dir / "parameter_sensitivity.csv";
    report::write_text_file(csv_path, csv);
    std::string md = "# Parameter sensitivity (delta = " + format_double(cfg.delta) + ")\n\n";
    md += report::markdown_table({"Parameter", "Sensitivity coefficient", "Sensitivity level"},
                                 md_rows);
    md += "\nNote: previously reported magnitudes for this analysis (innovation_index ±10%, "
          "market_stability ±4%, among others) are not reproducible from the model: both "
          "variables enter the resilience function linearly with equal weight and identical "
          "normalized ranges, so their computed sensitivities coincide. The table above reports "
          "the computed values.\n";
    const auto md_path = cfg.out_dir / "parameter_sensitivity.md";
    report::write_text_file(md_path, md);
    const auto svg_path = cfg.out_dir / "parameter_sensitivity.svg";
    report::write_text_file(
        svg_path, report::svg_bar_chart("Objective change for ±" +
                                            report::format_fixed(100.0 * cfg.delta, 0) +
                                            "% parameter change (%)",
                                        bars));
    std::cout << "wrote " << csv_path.string() << "\nwrote " << md_path.string() << "\nwrote "
              << svg_path.string() << "\n";
    return 0;
}

int cmd_experiment(const RunConfig& cfg, const std::string& name) {
    experiments::ExperimentContext ctx;
    ctx.seed = cfg.seed;
    ctx.out_dir = cfg.out_dir;
    ctx.threads = cfg.threads;
    ctx.log_base = cfg.log_base;

    std::vector<std::filesystem::path> files;
    if (name == "baseline") {
        files = experiments::run_baseline(ctx).files;
    } else if (name == "validate") {
        files = experiments::run_validate(ctx).files;
    } else if (name == "compare") {
        files = experiments::run_compare(ctx).files;
    } else if (name == "sectors") {
        files = experiments::run_sectors(ctx).files;
    } else if (name == "countries") {
        files = experiments::run_countries(ctx).files;
    } else {
        throw ContractError("unknown experiment '" + name +
                            "' (expected baseline|validate|compare|sectors|countries)");
    }
    for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ecoopt: multi-objective AI deployment optimization toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* env_seed = std::getenv("ECOOPT_SEED")) {
        cfg.seed = std::strtoull(env_seed, nullptr, 10);
    }

    std::string config_path;
    std::string weights_csv;
    std::string log_base_str;
    std::string table_name;
    std::string experiment_name;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file; flags override its values");
        sub->add_option("--seed", cfg.seed, "random seed (fallback: ECOOPT_SEED, then 42)");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--threads", cfg.threads, "worker threads for parallel stages")
            ->check(CLI::PositiveNumber);
        sub->add_flag("--no-timestamp", cfg.no_timestamp, "omit timestamps from manifests");
        sub->add_option("--log-base", log_base_str, "sustainability log base: e or 10")
            ->check(CLI::IsMember({"e", "10"}));
    };

    CLI::App* gen = app.add_subcommand("gen-data", "generate the synthetic datasets as CSV");
    add_common(gen);
    std::string spec_file;
    gen->add_flag("--all", "generate every builtin table (default)");
    gen->add_option("--table", table_name, "generate a single table by name");
    gen->add_option("--spec", spec_file, "generate from a JSON generator spec file instead");
    gen->add_option("--missing", cfg.missing_fraction,
                    "fraction of numeric cells to blank, at most 0.05");

    CLI::App* opt = app.add_subcommand("optimize", "solve for the optimal deployment strategy");
    add_common(opt);
    opt->add_option("--weights", weights_csv, "objective weights a,b,c (sum to 1)");
    opt->add_option("--tolerance", cfg.tolerance, "solver convergence tolerance");
    opt->add_option("--max-iterations", cfg.max_iterations, "solver iteration cap");

    CLI::App* sweep = app.add_subcommand("sweep", "optimize under the five stock weight configs");
    add_common(sweep);
    sweep->add_option("--tolerance", cfg.tolerance, "solver convergence tolerance");
    sweep->add_option("--max-iterations", cfg.max_iterations, "solver iteration cap");

    CLI::App* sens = app.add_subcommand("sensitivity",
                                        "one-at-a-time parameter sensitivity at the optimum");
    add_common(sens);
    sens->add_option("--weights", weights_csv, "objective weights a,b,c (sum to 1)");
    sens->add_option("--delta", cfg.delta, "perturbation fraction in (0,1)");

    CLI::App* exp = app.add_subcommand("experiment", "run a named analysis end to end");
    add_common(exp);
    exp->add_option("name", experiment_name,
                    "one of: baseline, validate, compare, sectors, countries")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        const auto was_set = [&](const std::string& name) {
            const CLI::Option* option = sub->get_option_no_throw(name);
            return option != nullptr && option->count() > 0;
        };
        FlagPresence set;
        set.seed = was_set("--seed");
        set.weights = was_set("--weights");
        set.out_dir = was_set("--out");
        set.log_base = was_set("--log-base");
        set.threads = was_set("--threads");
        set.no_timestamp = was_set("--no-timestamp");
        set.tolerance = was_set("--tolerance");
        set.max_iterations = was_set("--max-iterations");
        set.delta = was_set("--delta");
        set.missing_fraction = was_set("--missing");

        if (!config_path.empty()) apply_config_file(config_path, cfg, set);
        if (!weights_csv.empty()) cfg.weights = parse_weights(weights_csv);
        if (!log_base_str.empty()) cfg.log_base = parse_log_base(log_base_str);
        cfg.weights.validate();

        if (sub == gen) return cmd_gen_data(cfg, table_name, spec_file);
        if (sub == opt) return cmd_optimize(cfg);
        if (sub == sweep) return cmd_sweep(cfg);
        if (sub == sens) return cmd_sensitivity(cfg);
        return cmd_experiment(cfg, experiment_name);
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
