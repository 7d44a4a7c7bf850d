#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ecoopt/errors.hpp"
#include "ecoopt/rng.hpp"
#include "ecoopt/surrogate.hpp"

using namespace ecoopt;
using namespace ecoopt::surrogate;

namespace {

// exhaustive split enumeration for tiny one-feature problems
std::pair<double, double> brute_force_best_split(const std::vector<double>& x,
                                                 const std::vector<double>& y) {
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    double best_gain = 0.0, best_threshold = 0.0;
    for (std::size_t p = 1; p < sorted.size(); ++p) {
        if (sorted[p - 1] == sorted[p]) continue;
        const double thr = 0.5 * (sorted[p - 1] + sorted[p]);
        double nl = 0, nr = 0, sl = 0, sr = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] <= thr) {
                ++nl;
                sl += y[i];
            } else {
                ++nr;
                sr += y[i];
            }
        }
        double total = sl + sr, n = nl + nr;
        const double gain = sl * sl / nl + sr * sr / nr - total * total / n;
        if (gain > best_gain) {
            best_gain = gain;
            best_threshold = thr;
        }
    }
    return {best_gain, best_threshold};
}

} // namespace

TEST_CASE("tree fitting basics") {
    SUBCASE("constant target collapses to one leaf") {
        const Matrix x = {{0}, {1}, {2}, {3}};
        const std::vector<double> y = {7, 7, 7, 7};
        TreeParams params;
        params.min_samples_leaf = 1;
        const auto root = fit_tree(x, y, params);
        CHECK(root->is_leaf());
        CHECK(root->prediction == 7.0);
    }

    SUBCASE("step target splits at the midpoint") {
        const Matrix x = {{0}, {1}, {2}, {3}};
        const std::vector<double> y = {0, 0, 10, 10};
        TreeParams params;
        params.max_depth = 1;
        params.min_samples_leaf = 1;
        const auto root = fit_tree(x, y, params);
        REQUIRE_FALSE(root->is_leaf());
        CHECK(root->threshold == 1.5);
        CHECK(predict_tree(*root, {0.0}) == 0.0);
        CHECK(predict_tree(*root, {3.0}) == 10.0);
    }

    SUBCASE("depth zero is a mean leaf") {
        const Matrix x = {{0}, {1}, {2}, {3}};
        const std::vector<double> y = {1, 2, 3, 4};
        TreeParams params;
        params.max_depth = 0;
        params.min_samples_leaf = 1;
        const auto root = fit_tree(x, y, params);
        CHECK(root->is_leaf());
        CHECK(root->prediction == 2.5);
    }

    SUBCASE("empty data rejected") {
        CHECK_THROWS_AS(fit_tree({}, {}, TreeParams{}), ContractError);
    }
}

TEST_CASE("chosen split matches exhaustive enumeration on small inputs") {
    Rng rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 4 + rng.uniform_int(5); // 4..8 rows
        Matrix x(n, std::vector<double>(1));
        std::vector<double> y(n), flat(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i][0] = std::round(rng.uniform(0, 10));
            y[i] = std::round(rng.uniform(0, 10));
            flat[i] = x[i][0];
        }
        const auto [gain, threshold] = brute_force_best_split(flat, y);
        TreeParams params;
        params.max_depth = 1;
        params.min_samples_leaf = 1;
        const auto root = fit_tree(x, y, params);
        if (gain > 1e-9) {
            REQUIRE_FALSE(root->is_leaf());
            CHECK(root->threshold == doctest::Approx(threshold).epsilon(1e-12));
        }
    }
}

TEST_CASE("forest behavior") {
    SUBCASE("one distinct row leaves no bootstrap variation") {
        const Matrix x = {{1.0, 2.0}, {1.0, 2.0}};
        const std::vector<double> y = {5.0, 5.0};
        ForestParams params;
        params.n_trees = 1;
        params.min_samples_leaf = 1;
        const auto model = fit_forest(x, y, params);
        CHECK(model.predict_row({1.0, 2.0}) == 5.0);
        CHECK_THROWS_AS(fit_forest({}, {}, params), ContractError);
    }

    SUBCASE("signal feature dominates importance") {
        Rng rng(11);
        Matrix x;
        std::vector<double> y;
        for (int i = 0; i < 200; ++i) {
            const double signal = rng.uniform(0, 1);
            x.push_back({signal, rng.uniform(0, 1)});
            y.push_back(signal);
        }
        ForestParams params;
        params.n_trees = 30;
        params.seed = 3;
        const auto model = fit_forest(x, y, params);
        REQUIRE(model.feature_importance.size() == 2);
        CHECK(model.feature_importance[0] > 0.9);
        CHECK(model.feature_importance[0] + model.feature_importance[1] ==
              doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("determinism and thread independence") {
        Rng rng(12);
        Matrix x;
        std::vector<double> y;
        for (int i = 0; i < 60; ++i) {
            x.push_back({rng.uniform(0, 1), rng.uniform(0, 1)});
            y.push_back(x.back()[0] + 0.3 * x.back()[1]);
        }
        ForestParams params;
        params.n_trees = 8;
        params.seed = 99;
        const auto a = fit_forest(x, y, params);
        const auto b = fit_forest(x, y, params);
        ForestParams threaded = params;
        threaded.threads = 3;
        const auto c = fit_forest(x, y, threaded);
        for (const auto& row : x) {
            CHECK(a.predict_row(row) == b.predict_row(row));
            CHECK(a.predict_row(row) == c.predict_row(row));
        }
    }

    SUBCASE("forest prediction is the mean of its trees") {
        Rng rng(13);
        Matrix x;
        std::vector<double> y;
        for (int i = 0; i < 50; ++i) {
            x.push_back({rng.uniform(0, 1)});
            y.push_back(2.0 * x.back()[0]);
        }
        ForestParams params;
        params.n_trees = 7;
        const auto model = fit_forest(x, y, params);
        for (const auto& row : x) {
            double sum = 0.0;
            for (const auto& tree : model.trees) sum += predict_tree(*tree, row);
            CHECK(model.predict_row(row) ==
                  doctest::Approx(sum / 7.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("boosting behavior") {
    Rng rng(17);
    Matrix x;
    std::vector<double> y;
    for (int i = 0; i < 200; ++i) {
        const double a = rng.uniform(0, 1), b = rng.uniform(0, 1);
        x.push_back({a, b});
        y.push_back(std::sin(3 * a) + b * b);
    }

    SUBCASE("zero learning rate predicts the mean") {
        BoostingParams params;
        params.n_trees = 5;
        params.learning_rate = 0.0;
        const auto model = fit_boosting(x, y, params);
        double mean = 0.0;
        for (double v : y) mean += v;
        mean /= static_cast<double>(y.size());
        CHECK(model.predict_row(x[0]) == doctest::Approx(mean).epsilon(1e-12));
    }

    SUBCASE("training MSE is non-increasing in the number of trees") {
        double prev = std::numeric_limits<double>::infinity();
        for (int n_trees : {1, 5, 20, 60}) {
            BoostingParams params;
            params.n_trees = n_trees;
            const auto model = fit_boosting(x, y, params);
            const auto pred = model.predict(x);
            double mse = 0.0;
            for (std::size_t i = 0; i < y.size(); ++i) {
                mse += (y[i] - pred[i]) * (y[i] - pred[i]);
            }
            mse /= static_cast<double>(y.size());
            CHECK(mse <= prev + 1e-12);
            prev = mse;
        }
    }

    SUBCASE("constant target gives base prediction and zero importance") {
        Matrix xc = {{0.0}, {1.0}, {2.0}, {3.0}, {4.0}, {5.0},
                     {6.0}, {7.0}, {8.0}, {9.0}};
        std::vector<double> yc(10, 3.25);
        const auto model = fit_boosting(xc, yc, {});
        CHECK(model.base_prediction == 3.25);
        CHECK(model.predict_row({4.5}) == 3.25);
        CHECK(model.feature_importance[0] == 0.0);
    }

    SUBCASE("prediction decomposes into base + lr * tree sum") {
        BoostingParams params;
        params.n_trees = 12;
        const auto model = fit_boosting(x, y, params);
        for (int i = 0; i < 10; ++i) {
            double acc = 0.0;
            for (const auto& tree : model.trees) acc += predict_tree(*tree, x[i]);
            CHECK(model.predict_row(x[i]) ==
                  doctest::Approx(model.base_prediction + params.learning_rate * acc)
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("linear model") {
    SUBCASE("exact line") {
        Matrix x;
        std::vector<double> y;
        for (double v : {0.0, 1.0, 2.0, 3.0, 4.0}) {
            x.push_back({v});
            y.push_back(2.0 * v + 1.0);
        }
        const auto model = fit_linear(x, y);
        CHECK(model.coefficients[0] == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(model.intercept == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("identity fit") {
        const Matrix x = {{1}, {2}, {3}};
        const std::vector<double> y = {1, 2, 3};
        const auto model = fit_linear(x, y);
        CHECK(model.coefficients[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(model.intercept == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }

    SUBCASE("collinear design is rejected") {
        Matrix x;
        std::vector<double> y;
        for (double v : {1.0, 2.0, 3.0, 4.0}) {
            x.push_back({v, 2.0 * v});
            y.push_back(v);
        }
        CHECK_THROWS_AS(fit_linear(x, y), FitError);
    }

    SUBCASE("n <= d rejected") {
        CHECK_THROWS_AS(fit_linear({{1.0, 2.0}}, {1.0}), ContractError);
    }
}

TEST_CASE("metrics") {
    const auto m = evaluate({1, 2, 3, 4}, {1.5, 2.5, 2.5, 3.5});
    CHECK(m.mse == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(m.mae == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.rmse == doctest::Approx(std::sqrt(m.mse)).epsilon(1e-12));
    CHECK(m.r2 == doctest::Approx(1.0 - 1.0 / 5.0).epsilon(1e-12));
    CHECK(evaluate({1, 1}, {1, 1}).r2 == 1.0); // exact prediction of a constant
    CHECK_THROWS_AS(evaluate({1, 1}, {1, 2}), DegenerateInputError);
}

TEST_CASE("cross validation") {
    SUBCASE("perfect linear relation gives mean R2 = 1") {
        Rng rng(23);
        Matrix x;
        std::vector<double> y;
        for (int i = 0; i < 50; ++i) {
            x.push_back({rng.uniform(0, 1)});
            y.push_back(3.0 * x.back()[0] - 0.5);
        }
        const ModelFitter fitter = [](const Matrix& xt, const std::vector<double>& yt) {
            auto model = fit_linear(xt, yt);
            return Predictor([model](const Matrix& q) { return model.predict(q); });
        };
        const auto cv = cross_validate(fitter, x, y, 5, 1);
        CHECK(std::abs(cv.mean.r2 - 1.0) < 1e-9);
    }

    SUBCASE("fold sizes differ by at most one and cover everything") {
        Matrix x;
        std::vector<double> y;
        Rng rng(29);
        for (int i = 0; i < 530; ++i) {
            x.push_back({rng.uniform(0, 1)});
            y.push_back(x.back()[0]);
        }
        int calls = 0;
        const ModelFitter fitter = [&](const Matrix& xt, const std::vector<double>& yt) {
            ++calls;
            CHECK(xt.size() == 424); // 530 - 106
            auto model = fit_linear(xt, yt);
            return Predictor([model](const Matrix& q) { return model.predict(q); });
        };
        const auto cv = cross_validate(fitter, x, y, 5, 7);
        CHECK(calls == 5);
        CHECK(cv.folds.size() == 5);
    }

    SUBCASE("leave-one-out runs n fits") {
        Matrix x;
        std::vector<double> y;
        for (int i = 0; i < 10; ++i) {
            x.push_back({static_cast<double>(i)});
            y.push_back(2.0 * i);
        }
        int calls = 0;
        const ModelFitter fitter = [&](const Matrix& xt, const std::vector<double>& yt) {
            ++calls;
            auto model = fit_linear(xt, yt);
            return Predictor([model](const Matrix& q) { return model.predict(q); });
        };
        // exact relation: every single-row fold is predicted exactly
        const auto loo = cross_validate(fitter, x, y, 10, 3);
        CHECK(calls == 10);
        CHECK(loo.folds.size() == 10);
        CHECK(loo.mean.r2 == doctest::Approx(1.0).epsilon(1e-12));

        calls = 0;
        const auto cv = cross_validate(fitter, x, y, 5, 3);
        CHECK(calls == 5);
        CHECK(cv.oof_predictions.size() == 10);
    }

    SUBCASE("k out of range") {
        const Matrix x = {{1}, {2}, {3}};
        const std::vector<double> y = {1, 2, 3};
        const ModelFitter fitter = [](const Matrix&, const std::vector<double>&) {
            return Predictor([](const Matrix& q) { return std::vector<double>(q.size(), 0.0); });
        };
        CHECK_THROWS_AS(cross_validate(fitter, x, y, 4, 0), ContractError);
        CHECK_THROWS_AS(cross_validate(fitter, x, y, 1, 0), ContractError);
    }
}

TEST_CASE("permuting training rows leaves single-tree predictions unchanged") {
    Rng rng(37);
    Matrix x;
    std::vector<double> y;
    for (int i = 0; i < 40; ++i) {
        x.push_back({rng.uniform(0, 1), rng.uniform(0, 1)});
        y.push_back(x.back()[0] * 2.0 + x.back()[1]);
    }
    Matrix xp = x;
    std::vector<double> yp = y;
    // deterministic permutation: reverse
    std::reverse(xp.begin(), xp.end());
    std::reverse(yp.begin(), yp.end());

    TreeParams params;
    params.max_depth = 4;
    params.min_samples_leaf = 2;
    const auto a = fit_tree(x, y, params);
    const auto b = fit_tree(xp, yp, params);
    for (const auto& row : x) {
        CHECK(predict_tree(*a, row) == predict_tree(*b, row));
    }
}
