#include "ecoopt/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ecoopt/errors.hpp"
#include "ecoopt/preprocess.hpp"
#include "ecoopt/report.hpp"
#include "ecoopt/rng.hpp"

namespace ecoopt::experiments {

namespace {

using report::format_fixed;
using report::markdown_table;
using surrogate::Matrix;
using surrogate::ModelFitter;
using surrogate::Predictor;
using surrogate::RegressionMetrics;

constexpr double kTargetNoiseFraction = 0.01;

datagen::GeneratorSpec builtin_spec(const std::string& name, std::uint64_t seed) {
    for (auto& spec : datagen::builtin_specs(seed)) {
        if (spec.table_name == name) return spec;
    }
    throw ContractError("unknown builtin table " + name);
}

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

std::size_t feature_index(const std::vector<std::string>& names, std::string_view want) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == want) return i;
    }
    throw ContractError("feature set is missing " + std::string(want));
}

void write_csv_rows(const std::filesystem::path& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j) out += ',';
        out += header[j];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += ',';
            out += row[j];
        }
        out += '\n';
    }
    report::write_text_file(path, out);
}

// metrics rows shared by the validate/compare tables
std::vector<std::string> metrics_cells(const RegressionMetrics& m) {
    return {format_double(m.r2), format_double(m.mse), format_double(m.mae),
            format_double(m.rmse)};
}

std::vector<std::string> metrics_cells_fixed(const RegressionMetrics& m) {
    return {format_fixed(m.r2, 3), format_fixed(m.mse, 4), format_fixed(m.mae, 4),
            format_fixed(m.rmse, 4)};
}

} // namespace

DeploymentStrategy strategy_from_features(const std::vector<double>& row,
                                          const std::vector<std::string>& names) {
    DeploymentStrategy s;
    s.ai_adoption = clamp(row[feature_index(names, "ai_readiness_index")] / 10.0, 1.0, 10.0);
    s.renewable_energy = row[feature_index(names, "renewable_energy_pct")];
    s.efficiency_gain = clamp(row[feature_index(names, "energy_efficiency_index")] * 0.8, 5.0, 80.0);
    s.innovation_index = row[feature_index(names, "innovation_index")];
    s.market_stability = clamp(row[feature_index(names, "regulatory_quality")] / 10.0, 1.0, 10.0);
    s.ai_investment = row[feature_index(names, "ai_investment_per_capita")];
    s.energy_consumption = row[feature_index(names, "energy_consumption_mwh")];
    s.carbon_emissions = row[feature_index(names, "carbon_emissions_t")];
    s.water_usage = row[feature_index(names, "water_usage_l")];
    return s;
}

TargetSet build_targets(const DataTable& table, std::uint64_t seed, LogBase log_base) {
    TargetSet out;
    // features are the nine columns the deployment mapping consumes
    out.feature_names = {"ai_readiness_index",       "renewable_energy_pct",
                         "energy_efficiency_index",  "innovation_index",
                         "regulatory_quality",       "ai_investment_per_capita",
                         "energy_consumption_mwh",   "carbon_emissions_t",
                         "water_usage_l"};
    std::vector<std::size_t> cols;
    for (const auto& name : out.feature_names) cols.push_back(table.column_index(name));

    out.features.reserve(table.n_rows());
    for (const auto& row : table.rows) {
        std::vector<double> values;
        values.reserve(cols.size());
        for (std::size_t j : cols) {
            if (is_missing(row[j])) {
                throw ContractError("target construction requires complete rows; impute first");
            }
            values.push_back(std::get<double>(row[j]));
        }
        out.features.push_back(std::move(values));
    }

    ModelCoefficients coeffs;
    coeffs.log_base = log_base;
    const WeightConfig weights{0.6, 0.3, 0.1};
    for (const auto& row : out.features) {
        const DeploymentStrategy s = strategy_from_features(row, out.feature_names);
        out.sustainability.push_back(sustainability_impact(s, coeffs));
        out.resilience.push_back(economic_resilience(s, coeffs));
        out.environmental.push_back(environmental_cost(s, coeffs));
        out.composite.push_back(weighted_objective(s, weights, coeffs));
    }

    // 1% relative Gaussian noise, one stream per target
    std::uint64_t stream = 0;
    for (auto* target : {&out.sustainability, &out.resilience, &out.environmental,
                         &out.composite}) {
        Rng rng = Rng(seed).spawn(0x7a67e75ULL + stream++);
        const double sigma = kTargetNoiseFraction * stats::sample_std(*target);
        for (double& v : *target) v += sigma * rng.normal();
    }
    return out;
}

namespace {

ModelFitter linear_fitter() {
    return [](const Matrix& x, const std::vector<double>& y) {
        auto model = surrogate::fit_linear(x, y);
        return Predictor([model](const Matrix& q) { return model.predict(q); });
    };
}

ModelFitter forest_fitter(std::uint64_t seed, int threads) {
    return [seed, threads](const Matrix& x, const std::vector<double>& y) {
        surrogate::ForestParams params;
        params.seed = seed;
        params.threads = threads;
        auto model = std::make_shared<surrogate::TreeEnsemble>(surrogate::fit_forest(x, y, params));
        return Predictor([model](const Matrix& q) { return model->predict(q); });
    };
}

ModelFitter boosting_fitter(std::uint64_t seed) {
    return [seed](const Matrix& x, const std::vector<double>& y) {
        surrogate::BoostingParams params;
        params.seed = seed;
        auto model =
            std::make_shared<surrogate::TreeEnsemble>(surrogate::fit_boosting(x, y, params));
        return Predictor([model](const Matrix& q) { return model->predict(q); });
    };
}

// The model-based predictor: evaluates the composite objective on the mapped
// strategy. Nothing is learned from the training split.
ModelFitter composite_model_fitter(const std::vector<std::string>& names, LogBase log_base) {
    return [names, log_base](const Matrix&, const std::vector<double>&) {
        return Predictor([names, log_base](const Matrix& q) {
            ModelCoefficients coeffs;
            coeffs.log_base = log_base;
            const WeightConfig weights{0.6, 0.3, 0.1};
            std::vector<double> out;
            out.reserve(q.size());
            for (const auto& row : q) {
                out.push_back(
                    weighted_objective(strategy_from_features(row, names), weights, coeffs));
            }
            return out;
        });
    };
}

} // namespace

BaselineResult run_baseline(const ExperimentContext& ctx) {
    BaselineResult result;
    for (const auto& spec : datagen::builtin_specs(ctx.seed)) {
        result.reports.push_back(datagen::generate_full(spec));
    }

    // descriptive statistics over every numeric column of every table
    std::vector<std::vector<std::string>> stat_rows;
    for (const auto& rep : result.reports) {
        const DataTable& t = rep.table;
        for (std::size_t j = 0; j < t.columns.size(); ++j) {
            if (t.columns[j].kind != ColumnKind::numeric) continue;
            const auto v = t.numeric_values(j);
            stat_rows.push_back({t.name, t.columns[j].name, std::to_string(v.size()),
                                 format_double(stats::mean(v)),
                                 format_double(stats::sample_std(v)),
                                 format_double(*std::min_element(v.begin(), v.end())),
                                 format_double(*std::max_element(v.begin(), v.end()))});
        }
    }

    const auto& sus = result.reports[1];
    std::vector<std::vector<std::string>> corr_rows;
    std::vector<std::vector<std::string>> corr_rows_md;
    for (const auto& c : sus.correlation_stats) {
        const double a = std::abs(c.realized);
        const char* strength = a >= 0.7 ? "Strong" : a >= 0.4 ? "Moderate" : "Weak";
        const std::string interp = std::string(strength) + (c.realized >= 0 ? " positive" : " negative");
        corr_rows.push_back(
            {c.col_a, c.col_b, format_double(c.target), format_double(c.realized), interp});
        corr_rows_md.push_back(
            {c.col_a + " ~ " + c.col_b, format_fixed(c.realized, 2), interp});
    }

    const auto years = sus.table.numeric_values("year");
    std::vector<std::vector<std::string>> trend_rows;
    for (const auto& tr : sus.trend_stats) {
        const auto values = sus.table.numeric_values(tr.column);
        double first = 0.0, last = 0.0;
        std::size_t nf = 0, nl = 0;
        for (std::size_t i = 0; i < years.size(); ++i) {
            if (years[i] == 2015.0) {
                first += values[i];
                ++nf;
            } else if (years[i] == 2024.0) {
                last += values[i];
                ++nl;
            }
        }
        trend_rows.push_back({tr.column, format_double(first / static_cast<double>(nf)),
                              format_double(last / static_cast<double>(nl)),
                              format_double(tr.realized), format_double(tr.target)});
    }

    // preprocessing summary of the sustainability table, with the stock
    // sustainability-resilience interaction term
    preprocess::PipelineConfig prep_cfg;
    prep_cfg.interaction_pairs = {{"sustainability_score", "resilience_score"}};
    const auto pipeline = preprocess::fit(sus.table, prep_cfg);
    std::vector<std::vector<std::string>> prep_rows;
    for (std::size_t j = 0; j < pipeline.schema.size(); ++j) {
        if (pipeline.schema[j].kind != ColumnKind::numeric) continue;
        const auto& st = pipeline.stats[j];
        prep_rows.push_back({pipeline.schema[j].name, format_double(st.mean),
                             format_double(st.stddev), format_double(st.q1), format_double(st.q3),
                             format_double(st.lower_fence), format_double(st.upper_fence)});
    }

    if (ctx.write_files) {
        std::filesystem::create_directories(ctx.out_dir);
        const auto stats_path = ctx.out_dir / "summary_stats.csv";
        write_csv_rows(stats_path, {"table", "column", "count", "mean", "std", "min", "max"},
                       stat_rows);
        result.files.push_back(stats_path);

        const auto corr_path = ctx.out_dir / "correlations.csv";
        write_csv_rows(corr_path, {"variable_a", "variable_b", "target_r", "realized_r",
                                   "interpretation"},
                       corr_rows);
        result.files.push_back(corr_path);

        const auto trend_path = ctx.out_dir / "trends.csv";
        write_csv_rows(trend_path, {"metric", "avg_2015", "avg_2024", "annual_change",
                                    "target_annual_change"},
                       trend_rows);
        result.files.push_back(trend_path);

        const auto prep_path = ctx.out_dir / "preprocess_summary.csv";
        write_csv_rows(prep_path,
                       {"column", "mean", "std", "q1", "q3", "lower_fence", "upper_fence"},
                       prep_rows);
        result.files.push_back(prep_path);

        std::string md = "# Baseline analysis\n\n## Key correlations\n\n";
        md += markdown_table({"Variable pair", "Correlation (r)", "Interpretation"}, corr_rows_md);
        md += "\n## Temporal trends\n\n";
        std::vector<std::vector<std::string>> trend_md;
        for (const auto& row : trend_rows) {
            trend_md.push_back({row[0], format_fixed(std::stod(row[1]), 1),
                                format_fixed(std::stod(row[2]), 1),
                                format_fixed(std::stod(row[3]), 4) + " per year"});
        }
        md += markdown_table({"Metric", "2015 average", "2024 average", "Annual change"}, trend_md);
        const auto md_path = ctx.out_dir / "baseline_report.md";
        report::write_text_file(md_path, md);
        result.files.push_back(md_path);
    }
    return result;
}

ValidateResult run_validate(const ExperimentContext& ctx) {
    const DataTable table = datagen::generate(builtin_spec("sustainability", ctx.seed));
    const TargetSet targets = build_targets(table, ctx.seed, ctx.log_base);

    const std::size_t n = targets.features.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng shuffle_rng = Rng(ctx.seed).spawn(0x5b17ULL);
    for (std::size_t i = n - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(shuffle_rng.uniform_int(i + 1));
        std::swap(order[i], order[j]);
    }
    const std::size_t n_train = (n * 8) / 10;

    struct Task {
        const char* name;
        const std::vector<double>* target;
        bool boosted;
    };
    const Task tasks[] = {
        {"sustainability", &targets.sustainability, false},
        {"resilience", &targets.resilience, false},
        {"environmental", &targets.environmental, false},
        {"composite", &targets.composite, true},
    };

    ValidateResult result;
    std::uint64_t model_stream = 1;
    for (const auto& task : tasks) {
        Matrix x_train, x_test;
        std::vector<double> y_train, y_test;
        for (std::size_t i = 0; i < n; ++i) {
            if (i < n_train) {
                x_train.push_back(targets.features[order[i]]);
                y_train.push_back((*task.target)[order[i]]);
            } else {
                x_test.push_back(targets.features[order[i]]);
                y_test.push_back((*task.target)[order[i]]);
            }
        }

        ValidateResult::ComponentRow row;
        row.component = task.name;

        const std::uint64_t model_seed = ctx.seed ^ (0xabcdULL * model_stream++);
        std::vector<double> importance;
        if (task.boosted) {
            surrogate::BoostingParams params;
            params.seed = model_seed;
            const auto model = surrogate::fit_boosting(x_train, y_train, params);
            row.holdout = surrogate::evaluate(y_test, model.predict(x_test));
            importance = model.feature_importance;
            const auto cv = surrogate::cross_validate(boosting_fitter(model_seed),
                                                      targets.features, *task.target, 5, ctx.seed);
            row.cv_mean = cv.mean;
            row.cv_std = cv.stddev;
        } else {
            surrogate::ForestParams params;
            params.seed = model_seed;
            params.threads = ctx.threads;
            const auto model = surrogate::fit_forest(x_train, y_train, params);
            row.holdout = surrogate::evaluate(y_test, model.predict(x_test));
            importance = model.feature_importance;
            const auto cv = surrogate::cross_validate(forest_fitter(model_seed, ctx.threads),
                                                      targets.features, *task.target, 5, ctx.seed);
            row.cv_mean = cv.mean;
            row.cv_std = cv.stddev;
        }

        std::vector<std::pair<std::string, double>> ranked;
        for (std::size_t j = 0; j < importance.size(); ++j) {
            ranked.emplace_back(targets.feature_names[j], importance[j]);
        }
        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const auto& a, const auto& b) { return a.second > b.second; });
        ranked.resize(std::min<std::size_t>(ranked.size(), 5));
        row.top_features = std::move(ranked);
        result.components.push_back(std::move(row));
    }

    if (ctx.write_files) {
        std::filesystem::create_directories(ctx.out_dir);
        std::vector<std::vector<std::string>> holdout_rows, cv_rows, importance_rows;
        std::vector<std::vector<std::string>> holdout_md, cv_md;
        for (const auto& row : result.components) {
            auto cells = metrics_cells(row.holdout);
            holdout_rows.push_back({row.component, cells[0], cells[1], cells[2], cells[3]});
            auto fixed = metrics_cells_fixed(row.holdout);
            holdout_md.push_back({row.component, fixed[0], fixed[1], fixed[2], fixed[3]});
            cv_rows.push_back({row.component, format_double(row.cv_mean.r2),
                               format_double(row.cv_std.r2), format_double(row.cv_mean.mse),
                               format_double(row.cv_mean.mae)});
            cv_md.push_back({row.component, format_fixed(row.cv_mean.r2, 3),
                             format_fixed(row.cv_std.r2, 3), format_fixed(row.cv_mean.mse, 4),
                             format_fixed(row.cv_mean.mae, 4)});
            for (std::size_t rank = 0; rank < row.top_features.size(); ++rank) {
                importance_rows.push_back({row.component, std::to_string(rank + 1),
                                           row.top_features[rank].first,
                                           format_double(row.top_features[rank].second)});
            }
        }
        const auto holdout_path = ctx.out_dir / "validate_holdout.csv";
        write_csv_rows(holdout_path, {"component", "r2", "mse", "mae", "rmse"}, holdout_rows);
        result.files.push_back(holdout_path);
        const auto cv_path = ctx.out_dir / "validate_cv.csv";
        write_csv_rows(cv_path, {"component", "cv_r2_mean", "cv_r2_std", "cv_mse_mean",
                                 "cv_mae_mean"},
                       cv_rows);
        result.files.push_back(cv_path);
        const auto imp_path = ctx.out_dir / "feature_importance.csv";
        write_csv_rows(imp_path, {"component", "rank", "feature", "importance"}, importance_rows);
        result.files.push_back(imp_path);

        std::string md = "# Model validation\n\n## Hold-out metrics (80/20 split)\n\n";
        md += markdown_table({"Component", "R2", "MSE", "MAE", "RMSE"}, holdout_md);
        md += "\n## 5-fold cross-validation\n\n";
        md += markdown_table({"Component", "CV R2 mean", "CV R2 std", "CV MSE mean",
                              "CV MAE mean"},
                             cv_md);
        const auto md_path = ctx.out_dir / "validate_report.md";
        report::write_text_file(md_path, md);
        result.files.push_back(md_path);
    }
    return result;
}

CompareResult run_compare(const ExperimentContext& ctx) {
    const DataTable table = datagen::generate(builtin_spec("sustainability", ctx.seed));
    const TargetSet targets = build_targets(table, ctx.seed, ctx.log_base);
    const std::vector<double>& y = targets.composite;

    struct Entry {
        const char* name;
        ModelFitter fitter;
    };
    const Entry entries[] = {
        {"linear_regression", linear_fitter()},
        {"random_forest", forest_fitter(ctx.seed ^ 0xf0f0ULL, ctx.threads)},
        {"gradient_boosting", boosting_fitter(ctx.seed ^ 0xb00bULL)},
        {"composite_model", composite_model_fitter(targets.feature_names, ctx.log_base)},
    };

    CompareResult result;
    for (const auto& entry : entries) {
        // one shared CV seed so every model sees identical folds and the
        // residual vectors stay row-paired
        const auto cv = surrogate::cross_validate(entry.fitter, targets.features, y, 5, ctx.seed);
        CompareResult::ModelRow row;
        row.name = entry.name;
        row.cv_mean = cv.mean;
        row.abs_residuals.reserve(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) {
            row.abs_residuals.push_back(std::abs(y[i] - cv.oof_predictions[i]));
        }
        result.models.push_back(std::move(row));
    }

    const auto residuals_of = [&](const std::string& name) -> const std::vector<double>& {
        for (const auto& m : result.models) {
            if (m.name == name) return m.abs_residuals;
        }
        throw ContractError("unknown model " + name);
    };
    const std::pair<std::string, std::string> comparisons[] = {
        {"linear_regression", "composite_model"},
        {"random_forest", "composite_model"},
        {"gradient_boosting", "composite_model"},
        {"linear_regression", "gradient_boosting"},
    };
    for (const auto& [baseline, challenger] : comparisons) {
        CompareResult::TTestRow row;
        row.baseline = baseline;
        row.challenger = challenger;
        row.test = stats::paired_t_test(residuals_of(baseline), residuals_of(challenger));
        row.significant = row.test.p_value < 0.05;
        result.t_tests.push_back(std::move(row));
    }

    if (ctx.write_files) {
        std::filesystem::create_directories(ctx.out_dir);
        std::vector<std::vector<std::string>> model_rows, model_md;
        for (const auto& m : result.models) {
            auto cells = metrics_cells(m.cv_mean);
            model_rows.push_back({m.name, cells[0], cells[1], cells[2], cells[3]});
            auto fixed = metrics_cells_fixed(m.cv_mean);
            model_md.push_back({m.name, fixed[0], fixed[1], fixed[2], fixed[3]});
        }
        const auto methods_path = ctx.out_dir / "compare_methods.csv";
        write_csv_rows(methods_path, {"method", "r2", "mse", "mae", "rmse"}, model_rows);
        result.files.push_back(methods_path);

        std::vector<std::vector<std::string>> test_rows, test_md;
        for (const auto& t : result.t_tests) {
            const std::string label = t.challenger + " vs " + t.baseline;
            test_rows.push_back({label, format_double(t.test.t_statistic),
                                 format_double(t.test.p_value), format_double(t.test.cohens_d),
                                 t.significant ? "yes" : "no"});
            test_md.push_back({label, format_fixed(t.test.t_statistic, 2),
                               t.test.p_value < 0.001 ? "< 0.001" : format_fixed(t.test.p_value, 4),
                               format_fixed(t.test.cohens_d, 2), t.significant ? "Yes" : "No"});
        }
        const auto tests_path = ctx.out_dir / "compare_ttests.csv";
        write_csv_rows(tests_path,
                       {"comparison", "t_statistic", "p_value", "cohens_d", "significant"},
                       test_rows);
        result.files.push_back(tests_path);

        std::string md = "# Method comparison (5-fold CV means)\n\n";
        md += markdown_table({"Method", "R2", "MSE", "MAE", "RMSE"}, model_md);
        md += "\n## Paired t-tests on absolute out-of-fold residuals\n\n";
        md += markdown_table({"Comparison", "t-statistic", "p-value", "Cohen's d", "Significant"},
                             test_md);
        const auto md_path = ctx.out_dir / "compare_report.md";
        report::write_text_file(md_path, md);
        result.files.push_back(md_path);
    }
    return result;
}

namespace {

RankingResult ranked_group_means(const DataTable& table, const std::string& key_column,
                                 const std::vector<std::string>& value_columns,
                                 bool append_mean_composite) {
    const std::size_t jk = table.column_index(key_column);
    std::vector<std::size_t> jv;
    for (const auto& name : value_columns) jv.push_back(table.column_index(name));

    std::map<std::string, std::pair<std::vector<double>, std::size_t>> groups;
    for (const auto& row : table.rows) {
        const auto& key = std::get<std::string>(row[jk]);
        auto& [sums, count] = groups[key];
        sums.resize(jv.size(), 0.0);
        for (std::size_t v = 0; v < jv.size(); ++v) {
            sums[v] += std::get<double>(row[jv[v]]);
        }
        ++count;
    }

    RankingResult result;
    result.value_names = value_columns;
    if (append_mean_composite) result.value_names.push_back("composite");
    for (const auto& [key, acc] : groups) {
        RankingRow row;
        row.key = key;
        double total = 0.0;
        for (double s : acc.first) {
            row.values.push_back(s / static_cast<double>(acc.second));
            total += row.values.back();
        }
        if (append_mean_composite) {
            row.values.push_back(total / static_cast<double>(acc.first.size()));
        }
        result.rows.push_back(std::move(row));
    }
    // sort by the last value column (composite when present, else the first)
    const std::size_t sort_col = append_mean_composite ? result.value_names.size() - 1 : 0;
    std::stable_sort(result.rows.begin(), result.rows.end(),
                     [sort_col](const RankingRow& a, const RankingRow& b) {
                         return a.values[sort_col] > b.values[sort_col];
                     });
    return result;
}

} // namespace

RankingResult run_sectors(const ExperimentContext& ctx) {
    const DataTable table = datagen::generate(builtin_spec("entrepreneurship", ctx.seed));
    RankingResult result = ranked_group_means(
        table, "sector", {"sustainability_impact", "business_resilience", "ai_adoption"}, false);

    if (ctx.write_files) {
        std::filesystem::create_directories(ctx.out_dir);
        std::vector<std::vector<std::string>> rows, md_rows;
        std::vector<std::pair<std::string, double>> bars;
        for (const auto& r : result.rows) {
            rows.push_back({r.key, format_double(r.values[0]), format_double(r.values[1]),
                            format_double(r.values[2])});
            md_rows.push_back({r.key, format_fixed(r.values[0], 1), format_fixed(r.values[1], 1),
                               format_fixed(r.values[2], 1)});
            bars.emplace_back(r.key, r.values[0]);
        }
        const auto csv_path = ctx.out_dir / "sectors.csv";
        write_csv_rows(csv_path,
                       {"sector", "sustainability_impact", "business_resilience", "ai_adoption"},
                       rows);
        result.files.push_back(csv_path);
        const auto md_path = ctx.out_dir / "sectors_report.md";
        report::write_text_file(
            md_path, "# Sector performance (means, sorted by sustainability impact)\n\n" +
                         markdown_table({"Sector", "Sustainability impact", "Business resilience",
                                         "AI adoption"},
                                        md_rows));
        result.files.push_back(md_path);
        const auto svg_path = ctx.out_dir / "sectors.svg";
        report::write_text_file(svg_path,
                                report::svg_bar_chart("Sustainability impact by sector", bars));
        result.files.push_back(svg_path);
    }
    return result;
}

RankingResult run_countries(const ExperimentContext& ctx) {
    const DataTable table = datagen::generate(builtin_spec("sustainability", ctx.seed));
    RankingResult result = ranked_group_means(
        table, "country", {"sustainability_score", "resilience_score", "ai_readiness_index"},
        true);

    if (ctx.write_files) {
        std::filesystem::create_directories(ctx.out_dir);
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : result.rows) {
            rows.push_back({r.key, format_double(r.values[0]), format_double(r.values[1]),
                            format_double(r.values[2]), format_double(r.values[3])});
        }
        const auto csv_path = ctx.out_dir / "countries.csv";
        write_csv_rows(csv_path,
                       {"country", "sustainability_score", "resilience_score",
                        "ai_readiness_index", "composite"},
                       rows);
        result.files.push_back(csv_path);

        std::vector<std::vector<std::string>> md_rows;
        for (std::size_t i = 0; i < std::min<std::size_t>(result.rows.size(), 10); ++i) {
            const auto& r = result.rows[i];
            md_rows.push_back({r.key, format_fixed(r.values[0], 2), format_fixed(r.values[1], 2),
                               format_fixed(r.values[2], 2), format_fixed(r.values[3], 2)});
        }
        std::string md = "# Top 10 countries by composite score\n\n";
        md += markdown_table(
            {"Country", "Sustainability", "Resilience", "AI readiness", "Composite"}, md_rows);
        md += "\nThe composite is the unweighted mean of the three displayed columns.\n";
        const auto md_path = ctx.out_dir / "countries_report.md";
        report::write_text_file(md_path, md);
        result.files.push_back(md_path);
    }
    return result;
}

} // namespace ecoopt::experiments
