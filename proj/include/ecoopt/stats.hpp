#ifndef ECOOPT_STATS_HPP
#define ECOOPT_STATS_HPP

#include <cstddef>
#include <vector>

namespace ecoopt::stats {

struct TTestResult {
    double t_statistic = 0.0;
    std::size_t degrees_of_freedom = 0;
    double p_value = 1.0;
    double cohens_d = 0.0;
};

double mean(const std::vector<double>& v);

// Sample (n-1) standard deviation.
double sample_std(const std::vector<double>& v);

// Sample Pearson correlation. Throws DegenerateInputError when either
// input is constant, ContractError on length mismatch or n < 2.
double pearson_r(const std::vector<double>& x, const std::vector<double>& y);

// OLS slope of value on year. Requires at least two distinct years.
double trend_slope(const std::vector<double>& year, const std::vector<double>& value);

// Two-sided paired t-test on a - b with Cohen's d = mean(d)/std(d).
// Throws DegenerateInputError when the differences have zero variance.
TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b);

// Regularized incomplete beta I_x(a, b), absolute error below 1e-8.
// Continued-fraction evaluation with the standard symmetry switch.
double incomplete_beta(double a, double b, double x);

// CDF of Student's t distribution with df degrees of freedom.
double student_t_cdf(double t, double df);

} // namespace ecoopt::stats

#endif // ECOOPT_STATS_HPP
