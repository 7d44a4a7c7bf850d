#include "ecoopt/stats.hpp"

#include <cmath>

#include "ecoopt/errors.hpp"

namespace ecoopt::stats {

namespace {

constexpr double kBetaEps = 1e-12;
constexpr double kTiny = 1e-300;
constexpr int kMaxBetaIterations = 500;

// Lentz continued fraction for the incomplete beta function.
double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxBetaIterations; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kBetaEps) return h;
    }
    throw DomainError("incomplete beta continued fraction did not converge");
}

void require_same_length(const std::vector<double>& a, const std::vector<double>& b,
                         std::size_t min_n) {
    if (a.size() != b.size()) throw ContractError("vectors must have equal length");
    if (a.size() < min_n) throw ContractError("too few observations");
}

} // namespace

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double pearson_r(const std::vector<double>& x, const std::vector<double>& y) {
    require_same_length(x, y, 2);
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw DegenerateInputError("correlation undefined for constant input");
    }
    const double r = sxy / std::sqrt(sxx * syy);
    return std::min(std::max(r, -1.0), 1.0);
}

double trend_slope(const std::vector<double>& year, const std::vector<double>& value) {
    require_same_length(year, value, 2);
    const double my = mean(year);
    const double mv = mean(value);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < year.size(); ++i) {
        const double dy = year[i] - my;
        sxx += dy * dy;
        sxy += dy * (value[i] - mv);
    }
    if (sxx == 0.0) throw ContractError("trend requires at least two distinct years");
    return sxy / sxx;
}

TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b) {
    require_same_length(a, b, 2);
    const std::size_t n = a.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];

    const double md = mean(d);
    const double sd = sample_std(d);
    if (sd == 0.0) {
        throw DegenerateInputError("paired differences have zero variance");
    }

    TTestResult r;
    r.degrees_of_freedom = n - 1;
    r.t_statistic = md * std::sqrt(static_cast<double>(n)) / sd;
    r.cohens_d = md / sd;
    const double df = static_cast<double>(r.degrees_of_freedom);
    // two-sided tail mass
    r.p_value = incomplete_beta(df / 2.0, 0.5, df / (df + r.t_statistic * r.t_statistic));
    return r;
}

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("incomplete beta requires a, b > 0");
    if (x < 0.0 || x > 1.0) throw DomainError("incomplete beta requires x in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    // symmetry switch keeps the continued fraction in its fast-converging regime
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
    if (!(df > 0.0)) throw DomainError("degrees of freedom must be positive");
    if (t == 0.0) return 0.5;
    const double tail = 0.5 * incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
    return t > 0.0 ? 1.0 - tail : tail;
}

} // namespace ecoopt::stats
