// dimlab: run curvature scenarios and write reports.
//
//   dimlab run <config.json> [--out path] [--format json|csv]
//   dimlab list-scenarios
//   dimlab show-scenario <id>
//
// Exit codes: 0 all checks pass, 1 some check failed, 2 configuration or runtime error.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dimlab/scenario.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

int report_error(const std::string& kind, const std::string& message) {
    const nlohmann::json err{{"error", {{"kind", kind}, {"message", message}}}};
    std::cerr << err.dump() << '\n';
    return kExitError;
}

void print_summary(std::ostream& os, const dimlab::Report& report) {
    std::size_t failed = 0;
    for (const auto& r : report.records) {
        if (r.pass) continue;
        ++failed;
        os << "FAIL " << r.check;
        if (r.t) {
            os << " t=";
            for (Eigen::Index i = 0; i < r.t->size(); ++i) os << (*r.t)(i);
        }
        os << " value=" << r.value << " tolerance=" << r.tolerance << " [" << r.comparison << "]\n";
    }
    os << report.scenario_id << ": " << report.records.size() - failed << '/' << report.records.size()
       << " records pass\n";
}

int cmd_run(const std::string& config_path, const std::string& out_flag, const std::string& format_flag) {
    dimlab::ScenarioConfig cfg;
    try {
        cfg = dimlab::load_config(config_path);
    } catch (const dimlab::Error& e) {
        return report_error("config", e.what());
    }
    const std::string format = format_flag.empty() ? cfg.output_format : format_flag;
    if (format != "json" && format != "csv") return report_error("config", "unknown format '" + format + "'");
    std::string out_path = out_flag;
    if (out_path.empty() && cfg.output_path) out_path = *cfg.output_path;

    dimlab::Report report;
    try {
        report = dimlab::run(cfg);
    } catch (const dimlab::Error& e) {
        return report_error("scenario", e.what());
    }
    const std::string text = dimlab::render_report(report, format);
    if (out_path.empty()) {
        std::cout << text;
        print_summary(std::cerr, report);
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) return report_error("io", "cannot open '" + out_path + "' for writing");
        f << text;
        if (!f) return report_error("io", "write to '" + out_path + "' failed");
        print_summary(std::cout, report);
    }
    return report.all_pass() ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical curvature checks for direct-image bundles of holomorphic fibrations", "dimlab"};
    app.set_version_flag("--version", dimlab::version());
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format;
    auto* run = app.add_subcommand("run", "Run a scenario configuration and write its report");
    run->add_option("config", config_path, "Scenario configuration (JSON)")->required();
    run->add_option("--out", out_path, "Report path (default: config output.path, else stdout)");
    run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));

    auto* list = app.add_subcommand("list-scenarios", "List built-in scenarios");

    std::string scenario_id;
    auto* show = app.add_subcommand("show-scenario", "Print a built-in scenario configuration");
    show->add_option("id", scenario_id, "Scenario id")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitError;
    }

    if (*run) return cmd_run(config_path, out_path, format);
    if (*list) {
        for (const auto& e : dimlab::list_scenarios()) std::cout << e.id << '\t' << e.description << '\n';
        return 0;
    }
    if (*show) {
        try {
            std::cout << dimlab::builtin_scenario(scenario_id).dump(2) << '\n';
        } catch (const dimlab::Error& e) {
            return report_error("scenario", e.what());
        }
        return 0;
    }
    return kExitError;
}
