#ifndef ECOOPT_JSON_IO_HPP
#define ECOOPT_JSON_IO_HPP

#include <json.hpp>

#include "ecoopt/core_model.hpp"
#include "ecoopt/datagen.hpp"
#include "ecoopt/preprocess.hpp"
#include "ecoopt/solver.hpp"
#include "ecoopt/surrogate.hpp"

// JSON bindings for the public value types. Keys are snake_case and match
// the field names.

namespace ecoopt {

inline void to_json(nlohmann::json& j, const DeploymentStrategy& s) {
    j = nlohmann::json{
        {"ai_adoption", s.ai_adoption},
        {"renewable_energy", s.renewable_energy},
        {"efficiency_gain", s.efficiency_gain},
        {"innovation_index", s.innovation_index},
        {"market_stability", s.market_stability},
        {"ai_investment", s.ai_investment},
        {"energy_consumption", s.energy_consumption},
        {"carbon_emissions", s.carbon_emissions},
        {"water_usage", s.water_usage},
    };
}

inline void from_json(const nlohmann::json& j, DeploymentStrategy& s) {
    j.at("ai_adoption").get_to(s.ai_adoption);
    j.at("renewable_energy").get_to(s.renewable_energy);
    j.at("efficiency_gain").get_to(s.efficiency_gain);
    j.at("innovation_index").get_to(s.innovation_index);
    j.at("market_stability").get_to(s.market_stability);
    j.at("ai_investment").get_to(s.ai_investment);
    j.at("energy_consumption").get_to(s.energy_consumption);
    j.at("carbon_emissions").get_to(s.carbon_emissions);
    j.at("water_usage").get_to(s.water_usage);
}

inline void to_json(nlohmann::json& j, const WeightConfig& w) {
    j = nlohmann::json{{"alpha", w.alpha}, {"beta", w.beta}, {"gamma", w.gamma}};
}

inline void from_json(const nlohmann::json& j, WeightConfig& w) {
    j.at("alpha").get_to(w.alpha);
    j.at("beta").get_to(w.beta);
    j.at("gamma").get_to(w.gamma);
}

} // namespace ecoopt

namespace ecoopt::solver {

inline void to_json(nlohmann::json& j, const OptimizationResult& r) {
    j = nlohmann::json{
        {"optimum", r.optimum},
        {"objective_value", r.objective_value},
        {"component_scores",
         {{"sustainability", r.sustainability},
          {"resilience", r.resilience},
          {"environmental_cost", r.environmental_cost}}},
        {"iterations", r.iterations},
        {"converged", r.converged},
        {"kkt_residual", r.kkt_residual},
    };
}

} // namespace ecoopt::solver

namespace ecoopt::datagen {

inline void to_json(nlohmann::json& j, const ColumnSpec& c) {
    j = nlohmann::json{
        {"name", c.name},
        {"kind", c.kind == ColumnKind::numeric ? "numeric" : "categorical"},
        {"repeat", c.repeat},
    };
    if (!c.categories.empty()) j["categories"] = c.categories;
    if (!c.cycle_values.empty()) j["cycle_values"] = c.cycle_values;
    if (c.is_random_numeric()) {
        j["lo"] = c.lo;
        j["hi"] = c.hi;
        if (c.mean) j["mean"] = *c.mean;
        if (c.stddev) j["stddev"] = *c.stddev;
        if (c.trend_per_year != 0.0) j["trend_per_year"] = c.trend_per_year;
    }
}

inline void from_json(const nlohmann::json& j, ColumnSpec& c) {
    c = ColumnSpec{};
    j.at("name").get_to(c.name);
    c.kind = j.value("kind", std::string("numeric")) == "categorical" ? ColumnKind::categorical
                                                                      : ColumnKind::numeric;
    c.repeat = j.value("repeat", std::size_t{1});
    if (j.contains("categories")) j.at("categories").get_to(c.categories);
    if (j.contains("cycle_values")) j.at("cycle_values").get_to(c.cycle_values);
    c.lo = j.value("lo", 0.0);
    c.hi = j.value("hi", 0.0);
    if (j.contains("mean")) c.mean = j.at("mean").get<double>();
    if (j.contains("stddev")) c.stddev = j.at("stddev").get<double>();
    c.trend_per_year = j.value("trend_per_year", 0.0);
}

inline void to_json(nlohmann::json& j, const CorrelationTarget& t) {
    j = nlohmann::json{{"a", t.col_a}, {"b", t.col_b}, {"r", t.r}};
}

inline void from_json(const nlohmann::json& j, CorrelationTarget& t) {
    j.at("a").get_to(t.col_a);
    j.at("b").get_to(t.col_b);
    j.at("r").get_to(t.r);
}

inline void to_json(nlohmann::json& j, const GeneratorSpec& s) {
    j = nlohmann::json{
        {"table_name", s.table_name},
        {"n_rows", s.n_rows},
        {"columns", s.columns},
        {"seed", s.seed},
        {"correlation_inflation", s.correlation_inflation},
    };
    if (!s.correlations.empty()) j["correlations"] = s.correlations;
    if (!s.year_column.empty()) j["year_column"] = s.year_column;
    if (!s.effect_category_column.empty()) {
        j["effect_category_column"] = s.effect_category_column;
        j["category_effects"] = s.category_effects;
    }
}

inline void from_json(const nlohmann::json& j, GeneratorSpec& s) {
    s = GeneratorSpec{};
    j.at("table_name").get_to(s.table_name);
    j.at("n_rows").get_to(s.n_rows);
    j.at("columns").get_to(s.columns);
    if (j.contains("correlations")) j.at("correlations").get_to(s.correlations);
    if (j.contains("year_column")) j.at("year_column").get_to(s.year_column);
    if (j.contains("effect_category_column")) {
        j.at("effect_category_column").get_to(s.effect_category_column);
        j.at("category_effects").get_to(s.category_effects);
    }
    if (j.contains("seed")) j.at("seed").get_to(s.seed);
    s.correlation_inflation = j.value("correlation_inflation", 1.0);
}

} // namespace ecoopt::datagen

namespace ecoopt::preprocess {

inline void to_json(nlohmann::json& j, const FittedPipeline& p) {
    nlohmann::json cols = nlohmann::json::array();
    for (std::size_t i = 0; i < p.schema.size(); ++i) {
        nlohmann::json c{
            {"name", p.schema[i].name},
            {"kind", p.schema[i].kind == ColumnKind::numeric ? "numeric" : "categorical"},
        };
        if (p.schema[i].kind == ColumnKind::numeric) {
            c["mean"] = p.stats[i].mean;
            c["stddev"] = p.stats[i].stddev;
            c["q1"] = p.stats[i].q1;
            c["q3"] = p.stats[i].q3;
            c["lower_fence"] = p.stats[i].lower_fence;
            c["upper_fence"] = p.stats[i].upper_fence;
        } else {
            c["mode"] = p.stats[i].mode;
        }
        cols.push_back(std::move(c));
    }
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& [a, b] : p.config.interaction_pairs) pairs.push_back({a, b});
    j = nlohmann::json{
        {"config",
         {{"iqr_multiplier", p.config.iqr_multiplier},
          {"outlier_action",
           p.config.outlier_action == OutlierAction::winsorize ? "winsorize" : "drop"},
          {"scale", p.config.scale},
          {"population_std", p.config.population_std},
          {"interaction_pairs", pairs}}},
        {"columns", cols},
        {"warnings", p.warnings},
    };
}

inline void from_json(const nlohmann::json& j, FittedPipeline& p) {
    p = FittedPipeline{};
    const auto& cfg = j.at("config");
    cfg.at("iqr_multiplier").get_to(p.config.iqr_multiplier);
    p.config.outlier_action = cfg.at("outlier_action").get<std::string>() == "drop"
                                  ? OutlierAction::drop
                                  : OutlierAction::winsorize;
    cfg.at("scale").get_to(p.config.scale);
    cfg.at("population_std").get_to(p.config.population_std);
    for (const auto& pair : cfg.at("interaction_pairs")) {
        p.config.interaction_pairs.emplace_back(pair.at(0).get<std::string>(),
                                                pair.at(1).get<std::string>());
    }
    for (const auto& c : j.at("columns")) {
        ColumnInfo info;
        info.name = c.at("name").get<std::string>();
        info.kind = c.at("kind").get<std::string>() == "numeric" ? ColumnKind::numeric
                                                                 : ColumnKind::categorical;
        ColumnStats st;
        if (info.kind == ColumnKind::numeric) {
            c.at("mean").get_to(st.mean);
            c.at("stddev").get_to(st.stddev);
            c.at("q1").get_to(st.q1);
            c.at("q3").get_to(st.q3);
            c.at("lower_fence").get_to(st.lower_fence);
            c.at("upper_fence").get_to(st.upper_fence);
        } else {
            c.at("mode").get_to(st.mode);
        }
        p.schema.push_back(std::move(info));
        p.stats.push_back(std::move(st));
    }
    if (j.contains("warnings")) j.at("warnings").get_to(p.warnings);
}

} // namespace ecoopt::preprocess

namespace ecoopt::surrogate {

inline nlohmann::json tree_to_json(const TreeNode& node) {
    if (node.is_leaf()) return nlohmann::json{{"prediction", node.prediction}};
    return nlohmann::json{
        {"feature", node.feature},
        {"threshold", node.threshold},
        {"left", tree_to_json(*node.left)},
        {"right", tree_to_json(*node.right)},
    };
}

inline std::unique_ptr<TreeNode> tree_from_json(const nlohmann::json& j) {
    auto node = std::make_unique<TreeNode>();
    if (j.contains("prediction")) {
        j.at("prediction").get_to(node->prediction);
        return node;
    }
    j.at("feature").get_to(node->feature);
    j.at("threshold").get_to(node->threshold);
    node->left = tree_from_json(j.at("left"));
    node->right = tree_from_json(j.at("right"));
    return node;
}

inline void to_json(nlohmann::json& j, const TreeEnsemble& e) {
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& t : e.trees) trees.push_back(tree_to_json(*t));
    j = nlohmann::json{
        {"kind", e.kind == EnsembleKind::forest ? "forest" : "boosting"},
        {"trees", std::move(trees)},
        {"learning_rate", e.learning_rate},
        {"base_prediction", e.base_prediction},
        {"feature_importance", e.feature_importance},
        {"seed", e.seed},
    };
}

inline void from_json(const nlohmann::json& j, TreeEnsemble& e) {
    e = TreeEnsemble{};
    e.kind = j.at("kind").get<std::string>() == "forest" ? EnsembleKind::forest
                                                         : EnsembleKind::boosting;
    for (const auto& t : j.at("trees")) e.trees.push_back(tree_from_json(t));
    j.at("learning_rate").get_to(e.learning_rate);
    j.at("base_prediction").get_to(e.base_prediction);
    j.at("feature_importance").get_to(e.feature_importance);
    j.at("seed").get_to(e.seed);
}

inline void to_json(nlohmann::json& j, const RegressionMetrics& m) {
    j = nlohmann::json{{"r2", m.r2}, {"mse", m.mse}, {"mae", m.mae}, {"rmse", m.rmse}};
}

} // namespace ecoopt::surrogate

#endif // ECOOPT_JSON_IO_HPP
