#include <cstdio>

#include "ecoopt/datagen.hpp"

namespace ecoopt::datagen {

namespace {

std::vector<std::string> labeled_sequence(const std::string& prefix, std::size_t count, int width) {
    std::vector<std::string> out;
    out.reserve(count);
    char buf[64];
    for (std::size_t i = 1; i <= count; ++i) {
        std::snprintf(buf, sizeof(buf), "%s%0*zu", prefix.c_str(), width, i);
        out.emplace_back(buf);
    }
    return out;
}

std::vector<double> year_range(int first, int last) {
    std::vector<double> out;
    for (int y = first; y <= last; ++y) out.push_back(static_cast<double>(y));
    return out;
}

ColumnSpec categorical(std::string name, std::vector<std::string> categories, std::size_t repeat) {
    ColumnSpec c;
    c.name = std::move(name);
    c.kind = ColumnKind::categorical;
    c.categories = std::move(categories);
    c.repeat = repeat;
    return c;
}

ColumnSpec year_col(std::size_t repeat) {
    ColumnSpec c;
    c.name = "year";
    c.cycle_values = year_range(2015, 2024);
    c.repeat = repeat;
    return c;
}

ColumnSpec numeric(std::string name, double lo, double hi) {
    ColumnSpec c;
    c.name = std::move(name);
    c.lo = lo;
    c.hi = hi;
    return c;
}

ColumnSpec numeric(std::string name, double lo, double hi, double mean, double stddev,
                   double trend = 0.0) {
    ColumnSpec c = numeric(std::move(name), lo, hi);
    c.mean = mean;
    c.stddev = stddev;
    c.trend_per_year = trend;
    return c;
}

// Graded, zero-mean offsets so sector rankings are stable across seeds.
std::vector<double> graded_offsets(std::size_t count, double step) {
    std::vector<double> out(count);
    const double top = 0.5 * step * static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) out[i] = top - step * static_cast<double>(i);
    return out;
}

GeneratorSpec llm_energy_spec() {
    GeneratorSpec s;
    s.table_name = "llm_energy";
    s.n_rows = 200;
    s.columns.push_back(categorical("model_id", labeled_sequence("model_", 200, 3), 1));
    s.columns.push_back(numeric("model_params_b", 0.1, 179.8, 34.2, 52.6));
    s.columns.push_back(numeric("training_energy_mwh", 50.5, 1997.7, 634.0, 472.6));
    s.columns.push_back(numeric("carbon_emissions_t", 20.2, 1198.6));
    s.columns.push_back(numeric("water_usage_l", 100.0, 5000.0));
    s.columns.push_back(numeric("energy_efficiency_score", 20.0, 100.0));
    return s;
}

GeneratorSpec sustainability_spec() {
    GeneratorSpec s;
    s.table_name = "sustainability";
    s.n_rows = 530; // 53 countries x 10 years
    s.columns.push_back(categorical("country", labeled_sequence("Country_", 53, 2), 10));
    s.columns.push_back(year_col(1));
    s.columns.push_back(numeric("gdp_per_capita", 5380.0, 79831.0, 43705.0, 21009.0));
    s.columns.push_back(numeric("renewable_energy_pct", 10.4, 89.8, 52.1, 23.4, 0.67));
    s.columns.push_back(numeric("sustainability_score", 35.8, 85.5, 60.0, 9.6, 0.89));
    s.columns.push_back(numeric("resilience_score", 17.4, 38.1));
    s.columns.push_back(numeric("environmental_policy_score", 20.0, 100.0));
    s.columns.push_back(numeric("innovation_index", 20.0, 100.0, 62.0, 13.0, 0.82));
    s.columns.push_back(numeric("ai_readiness_index", 1.0, 99.0, 40.3, 24.0, 1.12));
    s.columns.push_back(numeric("economic_complexity_index", -2.0, 2.5, 0.25, 0.75));
    s.columns.push_back(numeric("digital_infrastructure_score", 20.0, 100.0));
    s.columns.push_back(numeric("green_finance_index", 10.0, 90.0));
    s.columns.push_back(numeric("energy_efficiency_index", 20.0, 100.0));
    s.columns.push_back(numeric("regulatory_quality", 10.0, 95.0));
    s.columns.push_back(numeric("ai_investment_per_capita", 10.0, 1000.0, 300.0, 165.0));
    s.columns.push_back(numeric("carbon_intensity", 0.05, 0.95, 0.43, 0.15, -0.012));
    s.columns.push_back(numeric("energy_consumption_mwh", 50.0, 2000.0, 800.0, 325.0));
    s.columns.push_back(numeric("carbon_emissions_t", 20.0, 1000.0, 400.0, 163.0));
    s.columns.push_back(numeric("water_usage_l", 100.0, 5000.0, 1800.0, 816.0));
    s.correlations = {
        {"economic_complexity_index", "resilience_score", 0.82},
        {"renewable_energy_pct", "sustainability_score", 0.71},
        {"environmental_policy_score", "sustainability_score", 0.55},
        {"innovation_index", "ai_readiness_index", 0.48},
        {"gdp_per_capita", "digital_infrastructure_score", 0.43},
    };
    s.year_column = "year";
    return s;
}

GeneratorSpec renewable_market_spec() {
    GeneratorSpec s;
    s.table_name = "renewable_market";
    s.n_rows = 1000; // 20 countries x 10 years x 5 project records
    s.columns.push_back(categorical("country", labeled_sequence("Country_", 20, 2), 50));
    s.columns.push_back(year_col(5));
    s.columns.push_back(numeric("capacity_mw", 1000.0, 50000.0));
    s.columns.push_back(numeric("green_finance_busd", 0.5, 20.0));
    s.columns.push_back(numeric("market_concentration_index", 0.05, 0.95));
    s.columns.push_back(numeric("policy_support_score", 20.0, 100.0));
    s.year_column = "year";
    return s;
}

GeneratorSpec entrepreneurship_spec() {
    GeneratorSpec s;
    s.table_name = "entrepreneurship";
    s.n_rows = 500;
    s.columns.push_back(categorical("company_id", labeled_sequence("company_", 500, 3), 1));
    s.columns.push_back(categorical("sector", sector_names(), 1));
    s.columns.push_back(numeric("ai_adoption", 1.0, 10.0, 5.5, 1.5));
    s.columns.push_back(numeric("sustainability_impact", 10.9, 80.7, 45.8, 11.6));
    s.columns.push_back(numeric("business_resilience", 10.9, 80.7, 45.8, 11.6));
    s.columns.push_back(numeric("revenue_growth_pct", -20.0, 60.0));
    s.effect_category_column = "sector";
    s.category_effects["sustainability_impact"] = graded_offsets(14, 0.5);
    s.category_effects["business_resilience"] = graded_offsets(14, 0.4);
    s.category_effects["ai_adoption"] = graded_offsets(14, 0.15);
    return s;
}

} // namespace

std::vector<GeneratorSpec> builtin_specs(std::uint64_t seed) {
    std::vector<GeneratorSpec> all = {
        llm_energy_spec(),
        sustainability_spec(),
        renewable_market_spec(),
        entrepreneurship_spec(),
    };
    for (auto& s : all) s.seed = seed;
    return all;
}

} // namespace ecoopt::datagen
