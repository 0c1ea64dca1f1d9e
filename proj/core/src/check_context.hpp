#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dimlab/projbundle.hpp"
#include "dimlab/scenario.hpp"

namespace dimlab::detail {

struct CheckContext {
    const ScenarioConfig& cfg;
    WeightPtr weight;
    std::optional<RankTwoMetricFamily> metric;  // set for proj_induced weights
    Basis basis;
    QuadratureRule rule;
    FdOptions fd;
    std::shared_ptr<L2GramField> field;
    std::vector<CheckRecord>* out = nullptr;

    [[nodiscard]] double tol(const std::string& name) const;
    [[nodiscard]] nlohmann::json params(const std::string& check) const;
    [[nodiscard]] int base_dim() const { return weight->base_dim(); }
    [[nodiscard]] bool is_p1() const { return cfg.fiber == FiberKind::p1; }

    void upper(const std::string& name, const std::optional<BasePoint>& t, double value,
               nlohmann::json values = nlohmann::json::object());
    void lower(const std::string& name, const std::optional<BasePoint>& t, double value,
               nlohmann::json values = nlohmann::json::object());
    void at_least(const std::string& name, const std::optional<BasePoint>& t, double value, double bound,
                  nlohmann::json values = nlohmann::json::object());
    void at_most(const std::string& name, const std::optional<BasePoint>& t, double value, double bound,
                 nlohmann::json values = nlohmann::json::object());
    void near(const std::string& name, const std::optional<BasePoint>& t, double value, double expected,
              nlohmann::json values = nlohmann::json::object());
    void recorded(const std::string& name, const std::optional<BasePoint>& t, double value,
                  nlohmann::json values = nlohmann::json::object());
};

using CheckFn = std::function<void(CheckContext&)>;

struct CheckEntry {
    std::string name;
    CheckFn fn;
};

const std::vector<CheckEntry>& check_registry();

/// Weight and optional rank-two metric family described by a scenario.
struct BuiltWeight {
    WeightPtr weight;
    std::optional<RankTwoMetricFamily> metric;
};
BuiltWeight build_weight(const std::string& family, const nlohmann::json& params);

QuadratureRule build_rule(const ScenarioConfig& cfg);

}  // namespace dimlab::detail
