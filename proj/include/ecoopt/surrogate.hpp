#ifndef ECOOPT_SURROGATE_HPP
#define ECOOPT_SURROGATE_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace ecoopt::surrogate {

using Matrix = std::vector<std::vector<double>>; // row-major feature matrix

// Binary regression tree node; a node without children is a leaf.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    double prediction = 0.0; // leaf value (node mean)
    std::unique_ptr<TreeNode> left;
    std::unique_ptr<TreeNode> right;

    bool is_leaf() const { return left == nullptr; }
};

struct TreeParams {
    int max_depth = 10;
    int min_samples_leaf = 2;
    // features drawn per split; nullopt = use all features
    std::optional<int> feature_subset;
    std::uint64_t seed = 0;
};

// Greedy variance-reduction CART. Split candidates are midpoints between
// consecutive distinct sorted values; ties break toward the lower feature
// index, then the lower threshold. The seed matters only when
// feature_subset is set. `importance` (when given) accumulates per-feature
// sum-of-squares reductions weighted by node sample counts.
std::unique_ptr<TreeNode> fit_tree(const Matrix& x, const std::vector<double>& y,
                                   const TreeParams& params,
                                   std::vector<double>* importance = nullptr);

double predict_tree(const TreeNode& root, const std::vector<double>& row);

enum class EnsembleKind { forest, boosting };

struct TreeEnsemble {
    EnsembleKind kind = EnsembleKind::forest;
    std::vector<std::unique_ptr<TreeNode>> trees;
    double learning_rate = 0.1;   // boosting only
    double base_prediction = 0.0; // boosting: target mean
    std::vector<double> feature_importance; // sums to 1, or all zero with no splits
    std::uint64_t seed = 0;

    double predict_row(const std::vector<double>& row) const;
    std::vector<double> predict(const Matrix& x) const;
};

struct ForestParams {
    int n_trees = 100;
    int max_depth = 10;
    int min_samples_leaf = 2;
    std::uint64_t seed = 0;
    int threads = 1;
};

// Bootstrap-aggregated trees with ceil(d/3) features per split.
TreeEnsemble fit_forest(const Matrix& x, const std::vector<double>& y,
                        const ForestParams& params = {});

struct BoostingParams {
    int n_trees = 100;
    double learning_rate = 0.1;
    int max_depth = 6;
    int min_samples_leaf = 5;
    std::uint64_t seed = 0;
};

// Stagewise least-squares boosting on residuals from the target mean.
TreeEnsemble fit_boosting(const Matrix& x, const std::vector<double>& y,
                          const BoostingParams& params = {});

struct LinearModel {
    std::vector<double> coefficients;
    double intercept = 0.0;

    double predict_row(const std::vector<double>& row) const;
    std::vector<double> predict(const Matrix& x) const;
};

// Least squares via column-pivoted QR. Requires n > d and a full-rank
// design (throws FitError otherwise).
LinearModel fit_linear(const Matrix& x, const std::vector<double>& y);

struct RegressionMetrics {
    double r2 = 0.0;
    double mse = 0.0;
    double mae = 0.0;
    double rmse = 0.0;
};

// Test-set mean in the R^2 denominator; r2 can be negative out of sample.
RegressionMetrics evaluate(const std::vector<double>& y_true,
                           const std::vector<double>& y_pred);

// Fits on a training split, returns a batch predictor.
using Predictor = std::function<std::vector<double>(const Matrix&)>;
using ModelFitter = std::function<Predictor(const Matrix&, const std::vector<double>&)>;

struct CrossValidationResult {
    std::vector<RegressionMetrics> folds;
    RegressionMetrics mean;
    RegressionMetrics stddev;
    // each row's held-out prediction, indexed like the input
    std::vector<double> oof_predictions;
};

// Seeded shuffle, contiguous folds with sizes differing by at most one.
CrossValidationResult cross_validate(const ModelFitter& fitter, const Matrix& x,
                                     const std::vector<double>& y, int k = 5,
                                     std::uint64_t seed = 0);

} // namespace ecoopt::surrogate

#endif // ECOOPT_SURROGATE_HPP
