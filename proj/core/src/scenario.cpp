#include "dimlab/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "check_context.hpp"
#include "dimlab/families.hpp"

#ifndef DIMLAB_VERSION
#define DIMLAB_VERSION "0.0.0"
#endif

namespace dimlab {

namespace {

constexpr int kSchemaVersion = 1;

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
    throw ScenarioError("config field '" + field + "': " + what);
}

cplx parse_complex(const nlohmann::json& j, const std::string& field) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        config_error(field, "expected a number or [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

BasePoint parse_point(const nlohmann::json& j, const std::string& field) {
    // [re, im] or a number for m = 1; [[re, im], [re, im]] for m = 2
    if (j.is_array() && !j.empty() && j[0].is_array()) {
        BasePoint t(static_cast<Eigen::Index>(j.size()));
        for (std::size_t i = 0; i < j.size(); ++i) t(static_cast<Eigen::Index>(i)) = parse_complex(j[i], field);
        return t;
    }
    return base_point(parse_complex(j, field));
}

nlohmann::json point_to_json(const BasePoint& t) {
    auto c = [](cplx z) { return nlohmann::json::array({z.real(), z.imag()}); };
    if (t.size() == 1) return c(t(0));
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < t.size(); ++i) arr.push_back(c(t(i)));
    return arr;
}

bool valid_id(const std::string& id) {
    if (id.empty()) return false;
    for (char ch : id) {
        const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '_' ||
                        ch == '-' || ch == '.';
        if (!ok) return false;
    }
    return true;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, res.ptr};
}

std::string mode_name(DerivativeMode m) { return m == DerivativeMode::analytic ? "analytic" : "finite_difference"; }

nlohmann::json quadrature_certificate(const QuadratureRule& rule) {
    std::vector<double> samples(rule.size());
    nlohmann::json cert = nlohmann::json::object();
    if (rule.is_p1()) {
        for (std::size_t i = 0; i < rule.size(); ++i) samples[i] = 1.0 / std::pow(1.0 + std::norm(rule.nodes()[i]), 2);
        cert["fs_area_error"] = std::abs(integrate(rule, std::span<const double>(samples)) - std::numbers::pi);
    } else {
        const auto* g = std::get_if<GaussianPlaneDomain>(&rule.domain());
        const double s = g ? g->envelope_scale : 1.0;
        for (std::size_t i = 0; i < rule.size(); ++i) samples[i] = std::exp(-std::norm(rule.nodes()[i]) / s);
        cert["gaussian_mass_error"] =
            std::abs(integrate(rule, std::span<const double>(samples)) / (std::numbers::pi * s) - 1.0);
    }
    cert["truncation_bound"] = rule.truncation_bound();
    return cert;
}

}  // namespace

// ------------------------------------------------------------------- config

ScenarioConfig parse_config(const nlohmann::json& j) {
    if (!j.is_object()) throw ScenarioError("config: expected a JSON object");
    static const std::set<std::string> known{"scenario_id", "description", "weight",      "fiber",
                                             "basis_cutoff", "quadrature", "t_grid",      "fd_step",
                                             "derivative_mode", "tolerances", "checks",   "check_params",
                                             "output"};
    for (const auto& [key, _] : j.items()) {
        if (!known.contains(key)) config_error(key, "unknown field");
    }
    ScenarioConfig cfg;
    try {
        if (!j.contains("scenario_id")) config_error("scenario_id", "missing");
        cfg.scenario_id = j.at("scenario_id").get<std::string>();
        if (!valid_id(cfg.scenario_id)) config_error("scenario_id", "use letters, digits, '_', '-', '.'");
        cfg.description = j.value("description", std::string());

        if (!j.contains("weight")) config_error("weight", "missing");
        const auto& w = j.at("weight");
        cfg.weight_family = w.at("family").get<std::string>();
        cfg.weight_params = w.value("params", nlohmann::json::object());

        const auto fiber = j.value("fiber", nlohmann::json{{"kind", "plane"}});
        const auto kind = fiber.value("kind", std::string("plane"));
        if (kind == "plane") {
            cfg.fiber = FiberKind::plane;
        } else if (kind == "p1") {
            cfg.fiber = FiberKind::p1;
            if (!fiber.contains("degree")) config_error("fiber.degree", "required for p1 fibers");
            cfg.degree = fiber.at("degree").get<int>();
            if (cfg.degree < 2) config_error("fiber.degree", "must be at least 2");
        } else {
            config_error("fiber.kind", "expected 'plane' or 'p1'");
        }

        cfg.basis_cutoff = j.value("basis_cutoff", 16);
        if (cfg.basis_cutoff < 1) config_error("basis_cutoff", "must be at least 1");

        if (j.contains("quadrature")) {
            const auto& q = j.at("quadrature");
            cfg.quadrature.n_radial = q.value("n_radial", cfg.quadrature.n_radial);
            cfg.quadrature.n_angular = q.value("n_angular", cfg.quadrature.n_angular);
            cfg.quadrature.cutoff_radius = q.value("cutoff_radius", cfg.quadrature.cutoff_radius);
            cfg.quadrature.envelope_scale = q.value("envelope_scale", cfg.quadrature.envelope_scale);
        }

        if (!j.contains("t_grid") || !j.at("t_grid").is_array() || j.at("t_grid").empty()) {
            config_error("t_grid", "must be a non-empty list of base points");
        }
        for (const auto& p : j.at("t_grid")) cfg.t_grid.push_back(parse_point(p, "t_grid"));

        cfg.fd_step = j.value("fd_step", 1e-3);
        if (!(cfg.fd_step > 0.0)) config_error("fd_step", "must be positive");

        const auto mode = j.value("derivative_mode", std::string("analytic"));
        if (mode == "analytic") {
            cfg.derivative_mode = DerivativeMode::analytic;
        } else if (mode == "finite_difference") {
            cfg.derivative_mode = DerivativeMode::finite_difference;
        } else {
            config_error("derivative_mode", "expected 'analytic' or 'finite_difference'");
        }

        if (j.contains("tolerances")) {
            for (const auto& [key, v] : j.at("tolerances").items()) cfg.tolerances[key] = v.get<double>();
        }
        if (j.contains("checks")) {
            for (const auto& c : j.at("checks")) {
                const auto name = c.get<std::string>();
                if (!is_registered_check(name)) config_error("checks", "unknown check '" + name + "'");
                cfg.checks.push_back(name);
            }
        }
        cfg.check_params = j.value("check_params", nlohmann::json::object());
        if (j.contains("output")) {
            const auto& o = j.at("output");
            if (o.contains("path") && !o.at("path").is_null()) cfg.output_path = o.at("path").get<std::string>();
            cfg.output_format = o.value("format", std::string("json"));
            if (cfg.output_format != "json" && cfg.output_format != "csv") {
                config_error("output.format", "expected 'json' or 'csv'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ScenarioError(std::string("config: ") + e.what());
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ScenarioError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

nlohmann::json config_to_json(const ScenarioConfig& cfg) {
    nlohmann::json j;
    j["scenario_id"] = cfg.scenario_id;
    if (!cfg.description.empty()) j["description"] = cfg.description;
    j["weight"] = {{"family", cfg.weight_family}, {"params", cfg.weight_params}};
    j["fiber"] = cfg.fiber == FiberKind::p1 ? nlohmann::json{{"kind", "p1"}, {"degree", cfg.degree}}
                                            : nlohmann::json{{"kind", "plane"}};
    j["basis_cutoff"] = cfg.basis_cutoff;
    j["quadrature"] = {{"n_radial", cfg.quadrature.n_radial}, {"n_angular", cfg.quadrature.n_angular}};
    if (cfg.fiber == FiberKind::plane) {
        j["quadrature"]["cutoff_radius"] = cfg.quadrature.cutoff_radius;
        j["quadrature"]["envelope_scale"] = cfg.quadrature.envelope_scale;
    }
    nlohmann::json grid = nlohmann::json::array();
    for (const auto& t : cfg.t_grid) grid.push_back(point_to_json(t));
    j["t_grid"] = grid;
    j["fd_step"] = cfg.fd_step;
    j["derivative_mode"] = mode_name(cfg.derivative_mode);
    j["tolerances"] = nlohmann::json::object();
    for (const auto& [k, v] : cfg.tolerances) j["tolerances"][k] = v;
    j["checks"] = cfg.checks;
    j["check_params"] = cfg.check_params;
    j["output"] = {{"format", cfg.output_format}};
    j["output"]["path"] = cfg.output_path ? nlohmann::json(*cfg.output_path) : nlohmann::json(nullptr);
    return j;
}

std::string config_hash(const ScenarioConfig& cfg) {
    auto j = config_to_json(cfg);
    j.erase("output");
    const std::string s = j.dump();
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = hex[h & 0xF];
        h >>= 4;
    }
    return out;
}

std::string version() { return DIMLAB_VERSION; }

// ------------------------------------------------------------------ running

namespace detail {

BuiltWeight build_weight(const std::string& family, const nlohmann::json& params) {
    if (family == "proj_induced") {
        if (!params.contains("metric")) throw PreconditionError("proj_induced: missing 'metric'");
        auto metric = RankTwoMetricFamily::from_json(params.at("metric"));
        const int l = params.value("l", 2);
        return {induced_weight(metric, l), metric};
    }
    return {make_weight(family, params), std::nullopt};
}

QuadratureRule build_rule(const ScenarioConfig& cfg) {
    const auto& q = cfg.quadrature;
    if (cfg.fiber == FiberKind::p1) return build_p1_rule(q.n_radial, q.n_angular);
    return build_plane_rule(PlaneDomainSpec::gaussian_plane(q.envelope_scale, q.cutoff_radius), q.n_radial,
                            q.n_angular, cfg.basis_cutoff);
}

}  // namespace detail

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& e : detail::check_registry()) v.push_back(e.name);
        return v;
    }();
    return names;
}

bool is_registered_check(const std::string& name) {
    for (const auto& n : check_names()) {
        if (n == name) return true;
    }
    return false;
}

bool Report::all_pass() const {
    for (const auto& r : records) {
        if (!r.pass) return false;
    }
    return true;
}

Report run(const ScenarioConfig& cfg) {
    const std::string where = "scenario '" + cfg.scenario_id + "'";
    Report report;
    report.scenario_id = cfg.scenario_id;
    try {
        auto built = detail::build_weight(cfg.weight_family, cfg.weight_params);
        for (const auto& t : cfg.t_grid) {
            if (t.size() != built.weight->base_dim()) {
                throw ScenarioError(where + ": t_grid points must have dimension " +
                                    std::to_string(built.weight->base_dim()));
            }
        }
        if (cfg.fiber == FiberKind::p1 && cfg.weight_params.contains("l") &&
            cfg.weight_params.at("l").get<int>() != cfg.degree) {
            throw ScenarioError(where + ": weight degree 'l' differs from fiber.degree");
        }
        const Basis basis = cfg.fiber == FiberKind::p1 ? Basis::p1(cfg.degree) : Basis::plane(cfg.basis_cutoff);
        QuadratureRule rule = detail::build_rule(cfg);
        const FdOptions fd{cfg.fd_step, true};
        const bool analytic = cfg.derivative_mode == DerivativeMode::analytic && built.weight->has_analytic();
        auto field = std::make_shared<L2GramField>(
            basis, built.weight, rule,
            analytic ? GramDerivativeMode::analytic_weight : GramDerivativeMode::finite_difference,
            analytic ? DerivativeMode::analytic : DerivativeMode::finite_difference, fd);
        field->set_fd(fd);

        report.provenance = {
            {"config_hash", config_hash(cfg)},
            {"code_version", version()},
            {"weight", {{"family", built.weight->family_id()}, {"params", built.weight->params()}}},
            {"basis", {{"kind", basis.is_p1() ? "p1_sections" : "plane_monomials"}, {"dim", basis.dim()}}},
            {"quadrature",
             {{"rule", rule.describe()}, {"nodes", rule.size()}, {"certificate", quadrature_certificate(rule)}}},
            {"derivative_mode", mode_name(cfg.derivative_mode)},
            {"fd_step", cfg.fd_step},
        };

        detail::CheckContext ctx{cfg, built.weight, built.metric, basis, rule, fd, field, &report.records};
        for (const auto& name : cfg.checks) {
            const auto& reg = detail::check_registry();
            const auto it = std::find_if(reg.begin(), reg.end(), [&](const auto& e) { return e.name == name; });
            if (it == reg.end()) throw ScenarioError(where + ": unknown check '" + name + "'");
            try {
                it->fn(ctx);
            } catch (const ScenarioError&) {
                throw;
            } catch (const Error& e) {
                throw ScenarioError(where + ", check '" + name + "': " + e.what());
            }
        }
    } catch (const ScenarioError&) {
        throw;
    } catch (const Error& e) {
        throw ScenarioError(where + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
        throw ScenarioError(where + ": bad parameter: " + e.what());
    }
    return report;
}

// ----------------------------------------------------------------- rendering

nlohmann::json report_to_json(const Report& report) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& r : report.records) {
        records.push_back({{"check", r.check},
                           {"t", r.t ? point_to_json(*r.t) : nlohmann::json(nullptr)},
                           {"value", r.value},
                           {"tolerance", r.tolerance},
                           {"comparison", r.comparison},
                           {"pass", r.pass},
                           {"values", r.values}});
    }
    return {{"schema_version", kSchemaVersion},
            {"scenario_id", report.scenario_id},
            {"provenance", report.provenance},
            {"records", records},
            {"all_pass", report.all_pass()}};
}

std::string report_to_csv(const Report& report) {
    std::ostringstream out;
    out << "scenario_id,check,t_re,t_im,value,tolerance,pass\n";
    for (const auto& r : report.records) {
        std::string re;
        std::string im;
        if (r.t) {
            for (Eigen::Index i = 0; i < r.t->size(); ++i) {
                if (i > 0) {
                    re += ';';
                    im += ';';
                }
                re += format_double((*r.t)(i).real());
                im += format_double((*r.t)(i).imag());
            }
        }
        out << report.scenario_id << ',' << r.check << ',' << re << ',' << im << ',' << format_double(r.value) << ','
            << format_double(r.tolerance) << ',' << (r.pass ? "true" : "false") << '\n';
    }
    return out.str();
}

std::string render_report(const Report& report, const std::string& format) {
    if (format == "json") return report_to_json(report).dump(2) + "\n";
    if (format == "csv") return report_to_csv(report);
    throw ScenarioError("unknown report format '" + format + "' (expected json or csv)");
}

}  // namespace dimlab
