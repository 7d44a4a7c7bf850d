#include "ecoopt/surrogate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "ecoopt/errors.hpp"
#include "ecoopt/rng.hpp"

namespace ecoopt::surrogate {

namespace {

void require_shape(const Matrix& x, const std::vector<double>& y, std::size_t min_rows) {
    if (x.empty() || y.empty()) throw ContractError("empty training data");
    if (x.size() != y.size()) throw ContractError("row count of X must match y");
    if (x.size() < min_rows) throw ContractError("too few rows for the requested fit");
    const std::size_t d = x[0].size();
    if (d == 0) throw ContractError("X has no features");
    for (const auto& row : x) {
        if (row.size() != d) throw ContractError("ragged feature matrix");
    }
}

struct SplitChoice {
    double gain = 0.0; // SSE reduction; > 0 for a usable split
    int feature = -1;
    double threshold = 0.0;
};

struct TreeBuilder {
    const Matrix& x;
    const std::vector<double>& y;
    const TreeParams& params;
    std::vector<double>* importance;
    Rng rng;
    std::size_t n_features;

    std::unique_ptr<TreeNode> build(std::vector<std::size_t>& indices, int depth) {
        auto node = std::make_unique<TreeNode>();
        const double n = static_cast<double>(indices.size());
        double mean = 0.0;
        for (std::size_t i : indices) mean += y[i];
        mean /= n;
        node->prediction = mean;

        double sse = 0.0;
        for (std::size_t i : indices) sse += (y[i] - mean) * (y[i] - mean);

        if (depth >= params.max_depth ||
            indices.size() < 2 * static_cast<std::size_t>(params.min_samples_leaf) || sse <= 0.0) {
            return node;
        }

        const SplitChoice split = best_split(indices, sse);
        if (split.feature < 0) return node;

        if (importance) (*importance)[static_cast<std::size_t>(split.feature)] += split.gain;
        node->feature = split.feature;
        node->threshold = split.threshold;

        std::vector<std::size_t> left, right;
        for (std::size_t i : indices) {
            (x[i][static_cast<std::size_t>(split.feature)] <= split.threshold ? left : right)
                .push_back(i);
        }
        node->left = build(left, depth + 1);
        node->right = build(right, depth + 1);
        return node;
    }

    SplitChoice best_split(const std::vector<std::size_t>& indices, double parent_sse) {
        std::vector<std::size_t> features(n_features);
        std::iota(features.begin(), features.end(), 0);
        if (params.feature_subset && static_cast<std::size_t>(*params.feature_subset) < n_features) {
            const auto m = static_cast<std::size_t>(*params.feature_subset);
            for (std::size_t i = 0; i < m; ++i) {
                const std::size_t j = i + static_cast<std::size_t>(rng.uniform_int(n_features - i));
                std::swap(features[i], features[j]);
            }
            features.resize(m);
            std::sort(features.begin(), features.end()); // ascending keeps tie-breaks stable
        }

        SplitChoice best;
        const std::size_t msl = static_cast<std::size_t>(params.min_samples_leaf);
        std::vector<std::pair<double, double>> pts(indices.size()); // (x value, y)
        for (std::size_t f : features) {
            for (std::size_t i = 0; i < indices.size(); ++i) {
                pts[i] = {x[indices[i]][f], y[indices[i]]};
            }
            std::sort(pts.begin(), pts.end());

            double total = 0.0;
            for (const auto& p : pts) total += p.second;
            const double n = static_cast<double>(pts.size());

            double left_sum = 0.0;
            for (std::size_t p = 1; p < pts.size(); ++p) {
                left_sum += pts[p - 1].second;
                if (p < msl || pts.size() - p < msl) continue;
                if (pts[p - 1].first == pts[p].first) continue; // not a distinct boundary
                const double nl = static_cast<double>(p);
                const double nr = n - nl;
                const double right_sum = total - left_sum;
                // SSE reduction = parent SSE - child SSEs, which expands to
                // the children's mean-shift terms only
                const double gain = left_sum * left_sum / nl + right_sum * right_sum / nr -
                                    total * total / n;
                if (gain > best.gain) {
                    best.gain = gain;
                    best.feature = static_cast<int>(f);
                    best.threshold = 0.5 * (pts[p - 1].first + pts[p].first);
                }
            }
        }
        // guard against vanishing-gain splits on constant targets
        if (best.feature >= 0 && !(best.gain > 1e-12 * std::max(parent_sse, 1.0))) {
            return SplitChoice{};
        }
        return best;
    }
};

void normalize_importance(std::vector<double>& importance) {
    double total = 0.0;
    for (double v : importance) total += v;
    if (total > 0.0) {
        for (double& v : importance) v /= total;
    }
}

} // namespace

std::unique_ptr<TreeNode> fit_tree(const Matrix& x, const std::vector<double>& y,
                                   const TreeParams& params, std::vector<double>* importance) {
    if (params.min_samples_leaf < 1 || params.max_depth < 0) {
        throw ContractError("invalid tree parameters");
    }
    require_shape(x, y, 2 * static_cast<std::size_t>(params.min_samples_leaf));
    if (importance) importance->assign(x[0].size(), 0.0);

    TreeBuilder builder{x, y, params, importance, Rng(params.seed), x[0].size()};
    std::vector<std::size_t> all(x.size());
    std::iota(all.begin(), all.end(), 0);
    return builder.build(all, 0);
}

double predict_tree(const TreeNode& root, const std::vector<double>& row) {
    const TreeNode* node = &root;
    while (!node->is_leaf()) {
        node = row[static_cast<std::size_t>(node->feature)] <= node->threshold ? node->left.get()
                                                                               : node->right.get();
    }
    return node->prediction;
}

double TreeEnsemble::predict_row(const std::vector<double>& row) const {
    double acc = 0.0;
    for (const auto& tree : trees) acc += predict_tree(*tree, row);
    if (kind == EnsembleKind::forest) {
        return trees.empty() ? 0.0 : acc / static_cast<double>(trees.size());
    }
    return base_prediction + learning_rate * acc;
}

std::vector<double> TreeEnsemble::predict(const Matrix& x) const {
    std::vector<double> out;
    out.reserve(x.size());
    for (const auto& row : x) out.push_back(predict_row(row));
    return out;
}

TreeEnsemble fit_forest(const Matrix& x, const std::vector<double>& y,
                        const ForestParams& params) {
    if (params.n_trees < 1) throw ContractError("n_trees must be positive");
    require_shape(x, y, 2 * static_cast<std::size_t>(params.min_samples_leaf));

    const std::size_t n = x.size();
    const std::size_t d = x[0].size();

    TreeEnsemble ensemble;
    ensemble.kind = EnsembleKind::forest;
    ensemble.seed = params.seed;
    ensemble.trees.resize(static_cast<std::size_t>(params.n_trees));
    ensemble.feature_importance.assign(d, 0.0);

    // per-tree seeds from a fixed splitmix sequence over the master seed
    std::vector<std::uint64_t> tree_seeds(static_cast<std::size_t>(params.n_trees));
    std::uint64_t sm = params.seed;
    for (auto& s : tree_seeds) s = splitmix64(sm);

    std::vector<std::vector<double>> tree_importance(ensemble.trees.size(),
                                                     std::vector<double>(d, 0.0));
    auto fit_one = [&](std::size_t t) {
        Rng rng(tree_seeds[t]);
        Matrix xb(n);
        std::vector<double> yb(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto pick = static_cast<std::size_t>(rng.uniform_int(n));
            xb[i] = x[pick];
            yb[i] = y[pick];
        }
        TreeParams tp;
        tp.max_depth = params.max_depth;
        tp.min_samples_leaf = params.min_samples_leaf;
        tp.feature_subset = static_cast<int>((d + 2) / 3); // ceil(d/3)
        tp.seed = rng.next_u64();
        ensemble.trees[t] = fit_tree(xb, yb, tp, &tree_importance[t]);
    };

    const int threads = std::max(params.threads, 1);
    if (threads == 1) {
        for (std::size_t t = 0; t < ensemble.trees.size(); ++t) fit_one(t);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (std::size_t t = next.fetch_add(1); t < ensemble.trees.size();
                     t = next.fetch_add(1)) {
                    fit_one(t);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    for (const auto& imp : tree_importance) {
        for (std::size_t j = 0; j < d; ++j) ensemble.feature_importance[j] += imp[j];
    }
    normalize_importance(ensemble.feature_importance);
    return ensemble;
}

TreeEnsemble fit_boosting(const Matrix& x, const std::vector<double>& y,
                          const BoostingParams& params) {
    if (params.n_trees < 1) throw ContractError("n_trees must be positive");
    if (params.learning_rate < 0.0) throw ContractError("learning rate must be nonnegative");
    require_shape(x, y, 2 * static_cast<std::size_t>(params.min_samples_leaf));

    const std::size_t n = x.size();
    const std::size_t d = x[0].size();

    TreeEnsemble ensemble;
    ensemble.kind = EnsembleKind::boosting;
    ensemble.learning_rate = params.learning_rate;
    ensemble.seed = params.seed;
    ensemble.feature_importance.assign(d, 0.0);

    double mean = 0.0;
    for (double v : y) mean += v;
    ensemble.base_prediction = mean / static_cast<double>(n);

    std::vector<double> residual(n);
    for (std::size_t i = 0; i < n; ++i) residual[i] = y[i] - ensemble.base_prediction;

    std::uint64_t sm = params.seed;
    std::vector<double> importance(d, 0.0);
    for (int t = 0; t < params.n_trees; ++t) {
        TreeParams tp;
        tp.max_depth = params.max_depth;
        tp.min_samples_leaf = params.min_samples_leaf;
        tp.seed = splitmix64(sm);
        std::vector<double> tree_imp;
        auto tree = fit_tree(x, residual, tp, &tree_imp);
        for (std::size_t i = 0; i < n; ++i) {
            residual[i] -= params.learning_rate * predict_tree(*tree, x[i]);
        }
        for (std::size_t j = 0; j < d; ++j) ensemble.feature_importance[j] += tree_imp[j];
        ensemble.trees.push_back(std::move(tree));
    }
    normalize_importance(ensemble.feature_importance);
    return ensemble;
}

double LinearModel::predict_row(const std::vector<double>& row) const {
    double acc = intercept;
    for (std::size_t j = 0; j < coefficients.size(); ++j) acc += coefficients[j] * row[j];
    return acc;
}

std::vector<double> LinearModel::predict(const Matrix& x) const {
    std::vector<double> out;
    out.reserve(x.size());
    for (const auto& row : x) out.push_back(predict_row(row));
    return out;
}

LinearModel fit_linear(const Matrix& x, const std::vector<double>& y) {
    require_shape(x, y, 1);
    const std::size_t n = x.size();
    const std::size_t d = x[0].size();
    if (n <= d) throw ContractError("linear fit requires more rows than features");

    Eigen::MatrixXd design(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d + 1));
    Eigen::VectorXd target(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        design(static_cast<Eigen::Index>(i), 0) = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            design(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j + 1)) = x[i][j];
        }
        target(static_cast<Eigen::Index>(i)) = y[i];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < static_cast<Eigen::Index>(d + 1)) {
        throw FitError("design matrix is rank deficient");
    }
    const Eigen::VectorXd beta = qr.solve(target);

    LinearModel model;
    model.intercept = beta(0);
    model.coefficients.assign(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) model.coefficients[j] = beta(static_cast<Eigen::Index>(j + 1));
    return model;
}

RegressionMetrics evaluate(const std::vector<double>& y_true, const std::vector<double>& y_pred) {
    if (y_true.size() != y_pred.size() || y_true.empty()) {
        throw ContractError("prediction and truth vectors must match and be non-empty");
    }
    const double n = static_cast<double>(y_true.size());
    double mean = 0.0;
    for (double v : y_true) mean += v;
    mean /= n;

    double sse = 0.0, sae = 0.0, sst = 0.0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const double e = y_true[i] - y_pred[i];
        sse += e * e;
        sae += std::abs(e);
        sst += (y_true[i] - mean) * (y_true[i] - mean);
    }
    RegressionMetrics m;
    m.mse = sse / n;
    m.mae = sae / n;
    m.rmse = std::sqrt(m.mse);
    if (sst == 0.0) {
        // constant truth: only an (up to roundoff) exact prediction has a
        // defined R^2
        if (m.rmse > 1e-9 * (1.0 + std::abs(mean))) {
            throw DegenerateInputError("R^2 undefined for constant targets");
        }
        m.r2 = 1.0;
    } else {
        m.r2 = 1.0 - sse / sst;
    }
    return m;
}

CrossValidationResult cross_validate(const ModelFitter& fitter, const Matrix& x,
                                     const std::vector<double>& y, int k, std::uint64_t seed) {
    require_shape(x, y, 2);
    const std::size_t n = x.size();
    if (k < 2 || static_cast<std::size_t>(k) > n) {
        throw ContractError("k must satisfy 2 <= k <= n");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    for (std::size_t i = n - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform_int(i + 1));
        std::swap(order[i], order[j]);
    }

    CrossValidationResult result;
    result.oof_predictions.assign(n, 0.0);

    const std::size_t base = n / static_cast<std::size_t>(k);
    const std::size_t extra = n % static_cast<std::size_t>(k);
    std::size_t cursor = 0;
    for (int fold = 0; fold < k; ++fold) {
        const std::size_t fold_size = base + (static_cast<std::size_t>(fold) < extra ? 1 : 0);
        const std::size_t begin = cursor;
        const std::size_t end = cursor + fold_size;
        cursor = end;

        Matrix x_train, x_test;
        std::vector<double> y_train, y_test;
        std::vector<std::size_t> test_rows;
        for (std::size_t i = 0; i < n; ++i) {
            if (i >= begin && i < end) {
                x_test.push_back(x[order[i]]);
                y_test.push_back(y[order[i]]);
                test_rows.push_back(order[i]);
            } else {
                x_train.push_back(x[order[i]]);
                y_train.push_back(y[order[i]]);
            }
        }

        const Predictor predictor = fitter(x_train, y_train);
        const std::vector<double> pred = predictor(x_test);
        for (std::size_t i = 0; i < test_rows.size(); ++i) {
            result.oof_predictions[test_rows[i]] = pred[i];
        }
        result.folds.push_back(evaluate(y_test, pred));
    }

    auto collect = [&](auto member) {
        std::vector<double> vals;
        for (const auto& f : result.folds) vals.push_back(f.*member);
        double mean = 0.0;
        for (double v : vals) mean += v;
        mean /= static_cast<double>(vals.size());
        double ss = 0.0;
        for (double v : vals) ss += (v - mean) * (v - mean);
        const double sd = vals.size() > 1 ? std::sqrt(ss / static_cast<double>(vals.size() - 1)) : 0.0;
        return std::pair{mean, sd};
    };
    std::tie(result.mean.r2, result.stddev.r2) = collect(&RegressionMetrics::r2);
    std::tie(result.mean.mse, result.stddev.mse) = collect(&RegressionMetrics::mse);
    std::tie(result.mean.mae, result.stddev.mae) = collect(&RegressionMetrics::mae);
    std::tie(result.mean.rmse, result.stddev.rmse) = collect(&RegressionMetrics::rmse);
    return result;
}

} // namespace ecoopt::surrogate
