#include "ecoopt/datagen.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ecoopt/errors.hpp"
#include "ecoopt/rng.hpp"
#include "ecoopt/stats.hpp"

namespace ecoopt::datagen {

namespace {

constexpr int kMaxCalibrationIterations = 12;
constexpr int kMaxAttempts = 5;
constexpr double kCorrTolerance = 0.05;      // absolute, per target pair
constexpr double kTrendTolerance = 0.15;     // relative, per trended column
constexpr double kEigenvalueFloor = 1e-10;

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Eigenvalue clipping followed by diagonal renormalization.
Eigen::MatrixXd repair_psd(const Eigen::MatrixXd& r) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(kEigenvalueFloor);
    Eigen::MatrixXd fixed = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
    Eigen::VectorXd d = fixed.diagonal().cwiseSqrt();
    for (int i = 0; i < fixed.rows(); ++i) {
        for (int j = 0; j < fixed.cols(); ++j) fixed(i, j) /= d(i) * d(j);
    }
    return fixed;
}

Eigen::MatrixXd cholesky_or_throw(const Eigen::MatrixXd& r) {
    Eigen::LLT<Eigen::MatrixXd> llt(r);
    if (llt.info() == Eigen::Success) return llt.matrixL();
    // last-resort jitter before declaring the spec unusable
    Eigen::MatrixXd jittered = r + 1e-8 * Eigen::MatrixXd::Identity(r.rows(), r.cols());
    Eigen::LLT<Eigen::MatrixXd> retry(jittered);
    if (retry.info() == Eigen::Success) return retry.matrixL();
    throw SpecError("correlation matrix is not positive semi-definite after repair");
}

struct ColumnPlan {
    std::size_t spec_index = 0;
    double target_mean = 0.0;
    double target_std = 0.0;
    double target_slope = 0.0;
    // calibrated working parameters
    double mu = 0.0;
    double sigma = 0.0;
    double slope = 0.0;
};

void validate_spec(const GeneratorSpec& spec) {
    if (spec.n_rows == 0) throw SpecError("row count must be positive");
    if (spec.columns.empty()) throw SpecError("spec declares no columns");
    for (const auto& col : spec.columns) {
        if (col.kind == ColumnKind::categorical) {
            if (col.categories.empty()) throw SpecError("categorical column '" + col.name + "' has no categories");
            if (col.repeat == 0) throw SpecError("repeat must be positive");
        } else if (!col.cycle_values.empty()) {
            if (col.repeat == 0) throw SpecError("repeat must be positive");
        } else {
            if (!(col.lo < col.hi)) throw SpecError("column '" + col.name + "' needs lo < hi");
            if (col.stddev_or_default() < 0.0) throw SpecError("negative stddev for '" + col.name + "'");
        }
    }
    for (const auto& target : spec.correlations) {
        if (std::abs(target.r) >= 1.0) throw SpecError("correlation targets must lie in (-1, 1)");
    }
}

} // namespace

const std::vector<std::string>& sector_names() {
    static const std::vector<std::string> names = {
        "Smart Cities",        "Clean Energy",     "Energy Storage",
        "Green Finance",       "Carbon Capture",   "Climate Tech",
        "Green Transportation", "Waste Management", "Sustainable Agriculture",
        "Water Technology",    "Circular Economy", "Green Building",
        "Sustainable Materials", "Environmental Monitoring",
    };
    return names;
}

GenerationReport generate_full(const GeneratorSpec& spec) {
    validate_spec(spec);
    const std::size_t n = spec.n_rows;

    // ---- structural columns -------------------------------------------
    // categorical labels and cycling numerics (year) are fixed by the spec
    std::vector<std::vector<std::string>> cat_values(spec.columns.size());
    std::vector<std::vector<double>> fixed_values(spec.columns.size());
    for (std::size_t j = 0; j < spec.columns.size(); ++j) {
        const auto& col = spec.columns[j];
        if (col.kind == ColumnKind::categorical) {
            cat_values[j].reserve(n);
            for (std::size_t i = 0; i < n; ++i) {
                cat_values[j].push_back(col.categories[(i / col.repeat) % col.categories.size()]);
            }
        } else if (!col.cycle_values.empty()) {
            fixed_values[j].reserve(n);
            for (std::size_t i = 0; i < n; ++i) {
                fixed_values[j].push_back(col.cycle_values[(i / col.repeat) % col.cycle_values.size()]);
            }
        }
    }

    // centered year regressor, when present
    std::vector<double> year_raw;
    Eigen::VectorXd t = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    double t_var = 0.0;
    if (!spec.year_column.empty()) {
        std::size_t yj = spec.columns.size();
        for (std::size_t j = 0; j < spec.columns.size(); ++j) {
            if (spec.columns[j].name == spec.year_column) yj = j;
        }
        if (yj == spec.columns.size() || fixed_values[yj].empty()) {
            throw SpecError("year column '" + spec.year_column + "' must be a cycling numeric column");
        }
        year_raw = fixed_values[yj];
        const double ym = std::accumulate(year_raw.begin(), year_raw.end(), 0.0) / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) t(static_cast<Eigen::Index>(i)) = year_raw[i] - ym;
        t_var = t.squaredNorm() / static_cast<double>(n);
    }

    // category-effect lookup per row
    std::vector<std::size_t> effect_index(n, 0);
    bool has_effects = !spec.effect_category_column.empty() && !spec.category_effects.empty();
    std::size_t n_effect_categories = 0;
    if (has_effects) {
        std::size_t cj = spec.columns.size();
        for (std::size_t j = 0; j < spec.columns.size(); ++j) {
            if (spec.columns[j].name == spec.effect_category_column) cj = j;
        }
        if (cj == spec.columns.size() || spec.columns[cj].kind != ColumnKind::categorical) {
            throw SpecError("effect category column must be categorical");
        }
        const auto& col = spec.columns[cj];
        n_effect_categories = col.categories.size();
        for (std::size_t i = 0; i < n; ++i) {
            effect_index[i] = (i / col.repeat) % n_effect_categories;
        }
        for (const auto& [name, offsets] : spec.category_effects) {
            if (offsets.size() != n_effect_categories) {
                throw SpecError("effect vector for '" + name + "' has wrong length");
            }
        }
    }

    // ---- random-numeric plan -------------------------------------------
    std::vector<ColumnPlan> plan;
    std::vector<std::size_t> col_to_plan(spec.columns.size(), SIZE_MAX);
    for (std::size_t j = 0; j < spec.columns.size(); ++j) {
        const auto& col = spec.columns[j];
        if (!col.is_random_numeric()) continue;
        if (col.trend_per_year != 0.0 && spec.year_column.empty()) {
            throw SpecError("column '" + col.name + "' declares a trend but the spec has no year column");
        }
        ColumnPlan p;
        p.spec_index = j;
        p.target_mean = col.mean_or_default();
        p.target_std = col.stddev_or_default();
        p.target_slope = col.trend_per_year;
        p.mu = p.target_mean;
        p.sigma = p.target_std;
        p.slope = p.target_slope;
        if (p.target_std > 0.0) {
            col_to_plan[j] = plan.size();
            plan.push_back(p);
        } else {
            // degenerate marginal: constant at the (clamped) mean
            fixed_values[j].assign(n, std::min(std::max(p.target_mean, col.lo), col.hi));
        }
    }
    const std::size_t k = plan.size();

    // correlation targets resolved to plan indices
    struct PairTarget {
        std::size_t a = 0, b = 0;
        double r = 0.0;
    };
    std::vector<PairTarget> pairs;
    for (const auto& target : spec.correlations) {
        std::size_t pa = SIZE_MAX, pb = SIZE_MAX;
        for (std::size_t p = 0; p < plan.size(); ++p) {
            if (spec.columns[plan[p].spec_index].name == target.col_a) pa = p;
            if (spec.columns[plan[p].spec_index].name == target.col_b) pb = p;
        }
        if (pa == SIZE_MAX || pb == SIZE_MAX || pa == pb) {
            throw SpecError("correlation target references unknown or degenerate columns (" +
                            target.col_a + ", " + target.col_b + ")");
        }
        pairs.push_back({pa, pb, target.r});
    }

    // translate a value-space correlation target into z-space, removing the
    // covariance the shared year trend will contribute
    auto z_space_target = [&](const PairTarget& pt, double sa, double sb, double slope_a,
                              double slope_b) {
        const double va = sa * sa + slope_a * slope_a * t_var;
        const double vb = sb * sb + slope_b * slope_b * t_var;
        double rho = (pt.r * spec.correlation_inflation * std::sqrt(va * vb) -
                      slope_a * slope_b * t_var) /
                     (sa * sb);
        return std::min(std::max(rho, -0.99), 0.99);
    };

    GenerationReport report;
    std::ostringstream failure;

    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        // ---- base normals, whitened and de-trended ----------------------
        Rng rng = Rng(spec.seed).spawn(fnv1a64(spec.table_name) + static_cast<std::uint64_t>(attempt));
        Eigen::MatrixXd w(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rng.normal();
            }
        }
        if (k > 0) {
            w.rowwise() -= w.colwise().mean();
            if (t_var > 0.0) {
                // remove the year component so added trends are exact in-sample
                const Eigen::RowVectorXd beta = (t.transpose() * w) / t.squaredNorm();
                w.noalias() -= t * beta;
            }
            if (n > 3 * k + 10) {
                // empirical whitening: exact identity sample covariance
                Eigen::MatrixXd s = (w.transpose() * w) / static_cast<double>(n);
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
                Eigen::VectorXd inv_sqrt = es.eigenvalues().cwiseMax(kEigenvalueFloor).cwiseSqrt().cwiseInverse();
                w = w * (es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose());
            }
        }

        // reset working parameters for this attempt
        for (auto& p : plan) {
            p.mu = p.target_mean;
            p.sigma = p.target_std;
            p.slope = p.target_slope;
        }
        Eigen::MatrixXd rho = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(k),
                                                        static_cast<Eigen::Index>(k));
        for (const auto& pt : pairs) {
            const double rz = z_space_target(pt, plan[pt.a].sigma, plan[pt.b].sigma,
                                             plan[pt.a].slope, plan[pt.b].slope);
            rho(static_cast<Eigen::Index>(pt.a), static_cast<Eigen::Index>(pt.b)) = rz;
            rho(static_cast<Eigen::Index>(pt.b), static_cast<Eigen::Index>(pt.a)) = rz;
        }

        std::vector<std::vector<double>> values(k, std::vector<double>(n));
        std::vector<double> realized_mean(k), realized_std(k), realized_slope(k);
        std::vector<double> realized_corr(pairs.size());
        int cal_iters = 0;

        for (int cal = 0; cal < kMaxCalibrationIterations; ++cal) {
            cal_iters = cal + 1;
            Eigen::MatrixXd z(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
            if (k > 0) {
                const Eigen::MatrixXd chol = cholesky_or_throw(repair_psd(rho));
                z = w * chol.transpose();
            }

            for (std::size_t p = 0; p < k; ++p) {
                const auto& col = spec.columns[plan[p].spec_index];
                const double* effects = nullptr;
                if (has_effects) {
                    auto it = spec.category_effects.find(col.name);
                    if (it != spec.category_effects.end()) effects = it->second.data();
                }
                for (std::size_t i = 0; i < n; ++i) {
                    double v = plan[p].mu +
                               plan[p].sigma * z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p)) +
                               plan[p].slope * t(static_cast<Eigen::Index>(i));
                    if (effects) v += effects[effect_index[i]];
                    values[p][i] = std::min(std::max(v, col.lo), col.hi);
                }
                realized_mean[p] = stats::mean(values[p]);
                realized_std[p] = stats::sample_std(values[p]);
                realized_slope[p] = (plan[p].target_slope != 0.0 && t_var > 0.0)
                                        ? stats::trend_slope(year_raw, values[p])
                                        : 0.0;
            }
            for (std::size_t q = 0; q < pairs.size(); ++q) {
                realized_corr[q] = stats::pearson_r(values[pairs[q].a], values[pairs[q].b]);
            }

            // tight internal tolerances; the outer verification is looser
            bool ok = true;
            for (std::size_t p = 0; p < k; ++p) {
                if (std::abs(realized_mean[p] - plan[p].target_mean) > 2e-3 * plan[p].target_std) ok = false;
                if (std::abs(realized_std[p] - plan[p].target_std) > 2e-3 * plan[p].target_std) ok = false;
                if (plan[p].target_slope != 0.0 &&
                    std::abs(realized_slope[p] - plan[p].target_slope) > 0.01 * std::abs(plan[p].target_slope)) {
                    ok = false;
                }
            }
            for (std::size_t q = 0; q < pairs.size(); ++q) {
                if (std::abs(realized_corr[q] - pairs[q].r) > 0.005) ok = false;
            }
            if (ok) break;
            if (cal + 1 == kMaxCalibrationIterations) break;

            for (std::size_t p = 0; p < k; ++p) {
                plan[p].mu += plan[p].target_mean - realized_mean[p];
                if (realized_std[p] > 1e-12) {
                    plan[p].sigma *= std::min(std::max(plan[p].target_std / realized_std[p], 0.5), 2.0);
                }
                if (plan[p].target_slope != 0.0) {
                    if (std::abs(realized_slope[p]) > 1e-12 &&
                        realized_slope[p] * plan[p].target_slope > 0.0) {
                        plan[p].slope *= std::min(std::max(plan[p].target_slope / realized_slope[p], 0.5), 2.0);
                    } else {
                        plan[p].slope += plan[p].target_slope - realized_slope[p];
                    }
                }
            }
            for (std::size_t q = 0; q < pairs.size(); ++q) {
                const auto a = static_cast<Eigen::Index>(pairs[q].a);
                const auto b = static_cast<Eigen::Index>(pairs[q].b);
                const double adjusted = std::min(std::max(rho(a, b) + (pairs[q].r - realized_corr[q]), -0.99), 0.99);
                rho(a, b) = adjusted;
                rho(b, a) = adjusted;
            }
        }

        // ---- wide verification ------------------------------------------
        bool pass = true;
        failure.str("");
        for (std::size_t q = 0; q < pairs.size(); ++q) {
            if (std::abs(realized_corr[q] - pairs[q].r) > kCorrTolerance) {
                pass = false;
                failure << "correlation (" << spec.columns[plan[pairs[q].a].spec_index].name << ", "
                        << spec.columns[plan[pairs[q].b].spec_index].name << ") realized "
                        << realized_corr[q] << " vs target " << pairs[q].r << "; ";
            }
        }
        for (std::size_t p = 0; p < k; ++p) {
            if (plan[p].target_slope == 0.0) continue;
            if (std::abs(realized_slope[p] - plan[p].target_slope) >
                kTrendTolerance * std::abs(plan[p].target_slope)) {
                pass = false;
                failure << "trend " << spec.columns[plan[p].spec_index].name << " realized "
                        << realized_slope[p] << " vs target " << plan[p].target_slope << "; ";
            }
        }
        if (!pass) continue;

        // ---- assemble table + report ------------------------------------
        report = GenerationReport{};
        report.attempts = attempt + 1;
        report.calibration_iterations = cal_iters;
        report.table.name = spec.table_name;
        for (const auto& col : spec.columns) {
            report.table.columns.push_back({col.name, col.kind});
        }
        report.table.rows.assign(n, std::vector<Cell>(spec.columns.size()));
        for (std::size_t j = 0; j < spec.columns.size(); ++j) {
            if (spec.columns[j].kind == ColumnKind::categorical) {
                for (std::size_t i = 0; i < n; ++i) report.table.rows[i][j] = cat_values[j][i];
            } else if (col_to_plan[j] != SIZE_MAX) {
                const auto& v = values[col_to_plan[j]];
                for (std::size_t i = 0; i < n; ++i) report.table.rows[i][j] = v[i];
            } else {
                for (std::size_t i = 0; i < n; ++i) report.table.rows[i][j] = fixed_values[j][i];
            }
        }

        for (std::size_t p = 0; p < k; ++p) {
            const auto& v = values[p];
            GenerationReport::ColumnStat cs;
            cs.column = spec.columns[plan[p].spec_index].name;
            cs.target_mean = plan[p].target_mean;
            cs.realized_mean = realized_mean[p];
            cs.target_std = plan[p].target_std;
            cs.realized_std = realized_std[p];
            cs.min = *std::min_element(v.begin(), v.end());
            cs.max = *std::max_element(v.begin(), v.end());
            report.column_stats.push_back(std::move(cs));
            if (plan[p].target_slope != 0.0) {
                report.trend_stats.push_back({spec.columns[plan[p].spec_index].name,
                                              plan[p].target_slope, realized_slope[p]});
            }
        }
        for (std::size_t q = 0; q < pairs.size(); ++q) {
            report.correlation_stats.push_back({spec.columns[plan[pairs[q].a].spec_index].name,
                                                spec.columns[plan[pairs[q].b].spec_index].name,
                                                pairs[q].r, realized_corr[q]});
        }
        return report;
    }

    throw SpecError("generation failed after " + std::to_string(kMaxAttempts) +
                    " attempts: " + failure.str());
}

DataTable generate(const GeneratorSpec& spec) { return generate_full(spec).table; }

DataTable inject_missing(const DataTable& table, double fraction, std::uint64_t seed) {
    if (fraction < 0.0 || fraction > 0.05) {
        throw ContractError("missing fraction must lie in [0, 0.05]");
    }

    std::vector<std::size_t> numeric_cols;
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
        if (table.columns[j].kind == ColumnKind::numeric) numeric_cols.push_back(j);
    }
    const std::size_t total = table.n_rows() * numeric_cols.size();
    const auto count = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(total)));

    DataTable out = table;
    if (count == 0) return out;

    // partial Fisher-Yates over the numeric cell index space
    std::vector<std::size_t> idx(total);
    std::iota(idx.begin(), idx.end(), 0);
    Rng rng = Rng(seed).spawn(fnv1a64("inject_missing"));
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.uniform_int(total - i));
        std::swap(idx[i], idx[j]);
        const std::size_t row = idx[i] / numeric_cols.size();
        const std::size_t col = numeric_cols[idx[i] % numeric_cols.size()];
        out.rows[row][col] = std::monostate{};
    }
    return out;
}

} // namespace ecoopt::datagen
