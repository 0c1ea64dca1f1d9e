#include <filesystem>
#include <fstream>
#include <set>

#include <gtest/gtest.h>

#include "dimlab/scenario.hpp"

using namespace dimlab;
using nlohmann::json;

namespace {

json small_fock() {
    json j = builtin_scenario("fock_scaled");
    j["scenario_id"] = "fock_small";
    j["basis_cutoff"] = 6;
    j["quadrature"] = {{"n_radial", 96}, {"n_angular", 48}, {"cutoff_radius", 12.0}, {"envelope_scale", 1.0}};
    j["t_grid"] = json::array({json::array({0.0, 0.0}), json::array({0.3, 0.4})});
    j["checks"] = {"psh", "nakano", "hormander_31"};
    return j;
}

std::string error_of(const json& j) {
    try {
        parse_config(j);
    } catch (const ScenarioError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST(Scenario, CatalogListsRequiredScenarios) {
    std::set<std::string> ids;
    for (const auto& e : list_scenarios()) {
        EXPECT_FALSE(e.description.empty()) << e.id;
        EXPECT_TRUE(ids.insert(e.id).second) << "duplicate " << e.id;
    }
    for (const char* id : {"fock_scaled", "fock_general", "mobius_flat", "hormander_eq", "ext_product",
                           "proj_rank2_conformal"}) {
        EXPECT_TRUE(ids.contains(id)) << id;
    }
    EXPECT_THROW(builtin_scenario("no_such_scenario"), ScenarioError);
}

TEST(Scenario, EveryBuiltinParses) {
    for (const auto& e : list_scenarios()) {
        const auto cfg = parse_config(builtin_scenario(e.id));
        EXPECT_EQ(cfg.scenario_id, e.id);
        EXPECT_FALSE(cfg.checks.empty()) << e.id;
    }
}

TEST(Scenario, ConfigRoundTrip) {
    const auto cfg = parse_config(builtin_scenario("fs_bump"));
    const auto again = parse_config(config_to_json(cfg));
    EXPECT_EQ(config_to_json(again), config_to_json(cfg));
    EXPECT_EQ(config_hash(again), config_hash(cfg));
    EXPECT_EQ(config_hash(cfg).size(), 16u);
    auto changed = builtin_scenario("fs_bump");
    changed["fd_step"] = 2e-3;
    EXPECT_NE(config_hash(parse_config(changed)), config_hash(cfg));
}

TEST(Scenario, UnknownCheckIsNamed) {
    auto j = small_fock();
    j["checks"] = {"psh", "curvature_magic"};
    EXPECT_NE(error_of(j).find("curvature_magic"), std::string::npos);
}

TEST(Scenario, SchemaViolationsNameTheField) {
    auto j = small_fock();
    j["colour"] = "blue";
    EXPECT_NE(error_of(j).find("colour"), std::string::npos);
    j = small_fock();
    j["t_grid"] = json::array();
    EXPECT_NE(error_of(j).find("t_grid"), std::string::npos);
    j = small_fock();
    j["basis_cutoff"] = 0;
    EXPECT_NE(error_of(j).find("basis_cutoff"), std::string::npos);
    j = small_fock();
    j["output"] = {{"format", "xml"}};
    EXPECT_NE(error_of(j).find("output.format"), std::string::npos);
    j = small_fock();
    j["fiber"] = {{"kind", "p1"}};
    EXPECT_NE(error_of(j).find("fiber.degree"), std::string::npos);
    j = small_fock();
    j.erase("weight");
    EXPECT_NE(error_of(j).find("weight"), std::string::npos);
}

TEST(Scenario, ModuleErrorsCarryScenarioContext) {
    auto j = small_fock();
    j["weight"] = {{"family", "unknown_family"}};
    try {
        run(parse_config(j));
        FAIL() << "expected a ScenarioError";
    } catch (const ScenarioError& e) {
        EXPECT_NE(std::string(e.what()).find("fock_small"), std::string::npos);
    }
    j = small_fock();
    j["t_grid"] = json::array({json::array({json::array({0.0, 0.0}), json::array({0.0, 0.0})})});
    EXPECT_THROW(run(parse_config(j)), ScenarioError);
}

TEST(Scenario, EmptyCheckListGivesProvenanceOnly) {
    auto j = small_fock();
    j["checks"] = json::array();
    const auto report = run(parse_config(j));
    EXPECT_TRUE(report.records.empty());
    EXPECT_TRUE(report.all_pass());
    const auto out = report_to_json(report);
    EXPECT_EQ(out.at("provenance").at("config_hash"), config_hash(parse_config(j)));
    EXPECT_TRUE(out.at("provenance").contains("quadrature"));
    EXPECT_EQ(out.at("provenance").at("code_version"), version());
}

TEST(Scenario, FockPipelinePasses) {
    const auto report = run(parse_config(small_fock()));
    std::set<std::string> seen;
    for (const auto& r : report.records) {
        EXPECT_TRUE(r.pass) << r.check;
        seen.insert(r.check.substr(0, r.check.find('.')));
    }
    EXPECT_EQ(seen, (std::set<std::string>{"psh", "nakano", "hormander_31"}));
}

TEST(Scenario, ReportsAreByteDeterministic) {
    const auto cfg = parse_config(builtin_scenario("fs_bump"));
    const auto a = run(cfg);
    const auto b = run(cfg);
    EXPECT_EQ(render_report(a, "json"), render_report(b, "json"));
    EXPECT_EQ(render_report(a, "csv"), render_report(b, "csv"));
    EXPECT_THROW(render_report(a, "xml"), ScenarioError);
}

TEST(Scenario, CsvLayout) {
    const auto report = run(parse_config(builtin_scenario("hormander_eq")));
    const auto csv = report_to_csv(report);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "scenario_id,check,t_re,t_im,value,tolerance,pass");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 6) << line;
        EXPECT_EQ(line.rfind("hormander_eq,", 0), 0u) << line;
    }
    EXPECT_EQ(rows, report.records.size());
}

TEST(Scenario, JsonReportLayout) {
    const auto out = report_to_json(run(parse_config(builtin_scenario("mobius_flat"))));
    for (const char* key : {"schema_version", "scenario_id", "provenance", "records", "all_pass"}) {
        EXPECT_TRUE(out.contains(key)) << key;
    }
    for (const auto& r : out.at("records")) {
        for (const char* key : {"check", "t", "value", "tolerance", "comparison", "pass", "values"}) {
            EXPECT_TRUE(r.contains(key)) << key;
        }
    }
}

TEST(Scenario, ShippedScenarioFilesMatchCatalog) {
    const std::filesystem::path dir = DIMLAB_SOURCE_DIR "/scenarios";
    std::size_t count = 0;
    for (const auto& e : list_scenarios()) {
        const auto file = dir / (e.id + ".json");
        ASSERT_TRUE(std::filesystem::exists(file)) << file;
        EXPECT_EQ(config_to_json(load_config(file.string())), config_to_json(parse_config(builtin_scenario(e.id))))
            << e.id;
        ++count;
    }
    std::size_t files = 0;
    for (const auto& f : std::filesystem::directory_iterator(dir)) files += f.path().extension() == ".json";
    EXPECT_EQ(files, count);
}

TEST(Scenario, RegressionFixtures) {
    std::ifstream in(DIMLAB_SOURCE_DIR "/tests/fixtures/regression.json");
    ASSERT_TRUE(in.good());
    const json fixtures = json::parse(in);
    std::map<std::string, Report> reports;
    for (const auto& pin : fixtures.at("pins")) {
        const std::string id = pin.at("scenario_id");
        const auto cfg = parse_config(builtin_scenario(id));
        ASSERT_EQ(config_hash(cfg), pin.at("config_hash").get<std::string>()) << id << ": fixtures are stale";
        if (!reports.contains(id)) reports.emplace(id, run(cfg));
        std::vector<const CheckRecord*> matching;
        for (const auto& r : reports.at(id).records) {
            if (r.check == pin.at("check")) matching.push_back(&r);
        }
        const auto index = pin.at("index").get<std::size_t>();
        ASSERT_LT(index, matching.size()) << id << " " << pin.at("check");
        const auto& rec = *matching[index];
        const std::string field = pin.at("field");
        const double got = field == "value" ? rec.value : rec.values.at(field.substr(7)).get<double>();
        const double want = pin.at("value");
        const double tol = pin.contains("rel_tol") ? pin.at("rel_tol").get<double>() * std::abs(want)
                                                   : pin.at("abs_tol").get<double>();
        EXPECT_NEAR(got, want, tol) << id << " " << pin.at("check") << "[" << index << "] " << field;
    }
}
