/**
 * @file scenario.hpp
 * @brief Scenario configurations, the check registry and deterministic reports.
 *
 * A scenario fixes a weight family, a fiber (plane or ℙ¹), a quadrature rule and a
 * grid of base points, and lists the checks to run. The report schema is documented
 * in docs/report_schema.md.
 */

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dimlab/bundle.hpp"
#include "dimlab/types.hpp"

namespace dimlab {

/// Raised for configuration errors and for module errors surfaced with scenario context.
class ScenarioError : public Error {
public:
    using Error::Error;
};

enum class FiberKind { plane, p1 };

struct QuadratureSpec {
    int n_radial = 160;
    int n_angular = 96;
    double cutoff_radius = 12.0;  ///< plane fibers only
    double envelope_scale = 1.0;  ///< plane fibers only
};

struct ScenarioConfig {
    std::string scenario_id;
    std::string description;
    std::string weight_family;
    nlohmann::json weight_params = nlohmann::json::object();
    FiberKind fiber = FiberKind::plane;
    int degree = 0;  ///< line-bundle degree l for ℙ¹ fibers
    int basis_cutoff = 16;
    QuadratureSpec quadrature;
    std::vector<BasePoint> t_grid;
    double fd_step = 1e-3;
    DerivativeMode derivative_mode = DerivativeMode::analytic;
    std::map<std::string, double> tolerances;
    std::vector<std::string> checks;
    nlohmann::json check_params = nlohmann::json::object();
    std::optional<std::string> output_path;
    std::string output_format = "json";
};

/// Parse and validate; throws ScenarioError naming the offending field.
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig load_config(const std::string& path);
nlohmann::json config_to_json(const ScenarioConfig& cfg);

/// 64-bit FNV-1a of the canonical config dump, as 16 hex digits.
std::string config_hash(const ScenarioConfig& cfg);

struct CheckRecord {
    std::string check;
    std::optional<BasePoint> t;
    double value = 0.0;
    double tolerance = 0.0;
    /// One of "value <= tolerance", "value >= -tolerance", "value >= tolerance",
    /// "|value - expected| <= tolerance", "recorded".
    std::string comparison;
    bool pass = false;
    nlohmann::json values = nlohmann::json::object();
};

struct Report {
    std::string scenario_id;
    nlohmann::json provenance;
    std::vector<CheckRecord> records;
    [[nodiscard]] bool all_pass() const;
};

/// Names of every registered check, in registry order.
const std::vector<std::string>& check_names();
bool is_registered_check(const std::string& name);

/// Default tolerance of a check (or of a "check.quantity" record).
double default_tolerance(const std::string& name);

Report run(const ScenarioConfig& cfg);

nlohmann::json report_to_json(const Report& report);
std::string report_to_csv(const Report& report);
/// Serialized report in the given format ("json" or "csv").
std::string render_report(const Report& report, const std::string& format);

// ------------------------------------------------------------------ catalog

struct CatalogEntry {
    std::string id;
    std::string description;
};

std::vector<CatalogEntry> list_scenarios();
/// Built-in scenario as JSON; throws ScenarioError for unknown ids.
nlohmann::json builtin_scenario(const std::string& id);

/// Library version string.
std::string version();

}  // namespace dimlab
