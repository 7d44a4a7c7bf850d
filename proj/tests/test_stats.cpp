#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ecoopt/errors.hpp"
#include "ecoopt/stats.hpp"

using namespace ecoopt;
using namespace ecoopt::stats;

namespace {

// independent oracle: adaptive Simpson quadrature of the Student-t density
double t_density(double x, double df) {
    const double c = std::exp(std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0)) /
                     std::sqrt(df * std::numbers::pi);
    return c * std::pow(1.0 + x * x / df, -(df + 1.0) / 2.0);
}

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(double a, double b, double df, double fa, double fm, double fb,
                        double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = t_density(lm, df), frm = t_density(rm, df);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * eps) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(a, m, df, fa, flm, fm, left, eps / 2.0, depth - 1) +
           adaptive_simpson(m, b, df, fm, frm, fb, right, eps / 2.0, depth - 1);
}

// two-sided tail mass via the body: p = 1 - 2 * integral of f over [0, |t|];
// keeps the quadrature on a finite interval where Simpson converges fast
double two_sided_p_by_integration(double t, double df) {
    const double hi = std::abs(t);
    const double fa = t_density(0.0, df), fb = t_density(hi, df);
    const double fm = t_density(0.5 * hi, df);
    const double whole = simpson(0.0, hi, fa, fm, fb);
    const double body = adaptive_simpson(0.0, hi, df, fa, fm, fb, whole, 1e-12, 60);
    return 1.0 - 2.0 * body;
}

} // namespace

TEST_CASE("pearson correlation") {
    CHECK(pearson_r({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pearson_r({1, 2, 3}, {3, 2, 1}) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(pearson_r({1, 2, 3, 4}, {1, 3, 2, 4}) == doctest::Approx(0.8).epsilon(1e-12));

    CHECK_THROWS_AS(pearson_r({1, 1, 1}, {1, 2, 3}), DegenerateInputError);
    CHECK_THROWS_AS(pearson_r({1, 2}, {1, 2, 3}), ContractError);

    SUBCASE("symmetry and affine invariance") {
        const std::vector<double> x = {0.3, 1.7, 2.9, 4.1, 0.2};
        const std::vector<double> y = {5.0, 3.3, 8.8, 1.1, 9.4};
        CHECK(pearson_r(x, y) == doctest::Approx(pearson_r(y, x)).epsilon(1e-12));
        std::vector<double> ax(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) ax[i] = -2.5 * x[i] + 7.0;
        CHECK(pearson_r(ax, y) == doctest::Approx(-pearson_r(x, y)).epsilon(1e-12));
    }
}

TEST_CASE("trend slope") {
    std::vector<double> year, value;
    for (int y = 2015; y <= 2024; ++y) {
        year.push_back(y);
        value.push_back(2.0 * y + 7.0);
    }
    CHECK(trend_slope(year, value) == doctest::Approx(2.0).epsilon(1e-12));

    std::fill(value.begin(), value.end(), 42.0);
    CHECK(trend_slope(year, value) == doctest::Approx(0.0).epsilon(1e-12));

    for (std::size_t i = 0; i < year.size(); ++i) {
        value[i] = 0.89 * year[i] + (i % 2 == 0 ? 0.0 : 0.0); // exact line, slope 0.89
    }
    CHECK(std::abs(trend_slope(year, value) - 0.89) < 1e-9);

    CHECK_THROWS_AS(trend_slope({2020, 2020}, {1.0, 2.0}), ContractError);

    SUBCASE("slope is affine in the values") {
        const std::vector<double> yr = {2015, 2016, 2017, 2018, 2019};
        const std::vector<double> v = {3.1, 2.9, 4.4, 4.0, 5.2};
        std::vector<double> scaled(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) scaled[i] = -3.5 * v[i];
        CHECK(trend_slope(yr, scaled) ==
              doctest::Approx(-3.5 * trend_slope(yr, v)).epsilon(1e-12));
    }
}

TEST_CASE("paired t test on d = [1, 2, 3]") {
    const TTestResult r = paired_t_test({2, 4, 6}, {1, 2, 3});
    CHECK(r.degrees_of_freedom == 2);
    CHECK(r.t_statistic == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-12));
    CHECK(r.cohens_d == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(r.p_value - 0.0742) < 5e-4);
    // closed form: I_{1/7}(1, 1/2) = 1 - sqrt(6/7)
    CHECK(r.p_value == doctest::Approx(1.0 - std::sqrt(6.0 / 7.0)).epsilon(1e-10));
}

TEST_CASE("t test degenerate and antisymmetry properties") {
    CHECK_THROWS_AS(paired_t_test({1, 2, 3}, {1, 2, 3}), DegenerateInputError);

    const std::vector<double> a = {3.0, 4.5, 2.2, 8.8, 5.1};
    const std::vector<double> b = {1.0, 5.0, 2.0, 4.0, 3.0};
    const auto fwd = paired_t_test(a, b);
    const auto rev = paired_t_test(b, a);
    CHECK(fwd.t_statistic == doctest::Approx(-rev.t_statistic).epsilon(1e-12));
    CHECK(fwd.cohens_d == doctest::Approx(-rev.cohens_d).epsilon(1e-12));
    CHECK(fwd.p_value == doctest::Approx(rev.p_value).epsilon(1e-12));
}

TEST_CASE("p value against the quadrature oracle") {
    for (const double t : {0.5, 1.0, 2.0, 3.4641016151377544, 6.0}) {
        for (const double df : {2.0, 4.0, 9.0, 29.0}) {
            const double via_beta = incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
            const double via_quad = two_sided_p_by_integration(t, df);
            CHECK(std::abs(via_beta - via_quad) < 1e-8);
        }
    }
}

TEST_CASE("p value monotone in |t|") {
    double prev = 1.0;
    for (double t = 0.5; t < 6.0; t += 0.5) {
        const double p = incomplete_beta(5.0, 0.5, 10.0 / (10.0 + t * t));
        CHECK(p < prev);
        prev = p;
    }
}

TEST_CASE("student t CDF reference points") {
    CHECK(student_t_cdf(0.0, 7.0) == 0.5);
    // df = 1 closed form: 1/2 + atan(t)/pi
    CHECK(std::abs(student_t_cdf(1.0, 1.0) - 0.75) < 1e-6);
    CHECK(std::abs(student_t_cdf(-1.0, 1.0) - 0.25) < 1e-6);
    for (const double t : {-2.0, -0.3, 0.7, 2.5}) {
        const double closed = 0.5 + std::atan(t) / std::numbers::pi;
        CHECK(std::abs(student_t_cdf(t, 1.0) - closed) < 1e-8);
    }
}
