// One PASS/FAIL line per acceptance criterion, evaluated on the built-in scenarios.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dimlab/scenario.hpp"

using namespace dimlab;
using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
    bool pass = true;
    std::ostringstream note;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            note << " [" << what << " failed]";
        }
    }
};

std::map<std::string, Report> g_cache;

const Report& run_builtin(const std::string& id, const std::vector<std::string>& checks = {}) {
    std::string key = id;
    for (const auto& c : checks) key += "|" + c;
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second;
    json j = builtin_scenario(id);
    if (!checks.empty()) j["checks"] = checks;
    return g_cache.emplace(key, run(parse_config(j))).first->second;
}

std::vector<const CheckRecord*> records(const Report& r, const std::string& check) {
    std::vector<const CheckRecord*> out;
    for (const auto& rec : r.records) {
        if (rec.check == check) out.push_back(&rec);
    }
    return out;
}

double max_of(const Report& r, const std::string& check) {
    double m = -kInf;
    for (const auto* rec : records(r, check)) m = std::max(m, rec->value);
    return m;
}

double min_of(const Report& r, const std::string& check) {
    double m = kInf;
    for (const auto* rec : records(r, check)) m = std::min(m, rec->value);
    return m;
}

bool has(const Report& r, const std::string& check) { return !records(r, check).empty(); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::vector<std::string> scenarios_where(const std::function<bool(const json&)>& pred) {
    std::vector<std::string> ids;
    for (const auto& e : list_scenarios()) {
        if (pred(builtin_scenario(e.id))) ids.push_back(e.id);
    }
    return ids;
}

bool lists_check(const json& j, const std::string& check) {
    const auto& c = j.at("checks");
    return std::find(c.begin(), c.end(), check) != c.end();
}

bool is_p1(const json& j) { return j.at("fiber").at("kind") == "p1"; }

// ----------------------------------------------------------------- criteria

void ac1(Outcome& o) {
    const auto& r = run_builtin("fock_scaled", {"fock_oracle"});
    const double gram = max_of(r, "fock_oracle.gram");
    double kernel0 = kInf, curv0 = kInf;
    for (const auto* rec : records(r, "fock_oracle.kernel")) {
        if (rec->t && std::abs((*rec->t)(0)) == 0.0) kernel0 = rec->value;
    }
    for (const auto* rec : records(r, "fock_oracle.curvature")) {
        if (rec->t && std::abs((*rec->t)(0)) == 0.0) curv0 = rec->value;
    }
    o.require(gram <= 1e-8, "gram");
    o.require(kernel0 <= 1e-6, "kernel");
    o.require(curv0 <= 1e-3, "curvature");
    o.note << "fock_scaled gram rel " << fmt(gram) << ", K_0(0,0) err " << fmt(kernel0) << ", Theta(0) rel "
           << fmt(curv0);
}

void ac2(Outcome& o) {
    for (const auto& id : scenarios_where([](const json& j) {
             const std::string f = j.at("weight").at("family");
             return f == "fock_scaled" || f == "fock_general";
         })) {
        const auto& r = run_builtin(id, {"psh", "nakano", "hormander_31"});
        const double psh = min_of(r, "psh");
        const double nak = min_of(r, "nakano");
        const double hor = min_of(r, "hormander_31");
        o.note << id << ": psh " << fmt(psh) << " nakano " << fmt(nak) << " margin " << fmt(hor) << "; ";
        if (psh < -1e-7) continue;
        o.require(nak >= -1e-4, id + " nakano");
        o.require(hor >= -1e-4, id + " hormander_31");
    }
}

void ac3(Outcome& o) {
    std::set<std::string> done;
    for (const auto& e : list_scenarios()) {
        const json j = builtin_scenario(e.id);
        const std::string family = j.at("weight").at("family");
        if (family == "proj_induced") continue;  // finite differences only
        const auto& t0 = j.at("t_grid").at(0);
        if (t0.is_array() && t0.at(0).is_array()) continue;  // quotient identity is for m = 1
        if (!done.insert(family).second) continue;
        const auto& r = run_builtin(e.id, {"hessian_quotient"});
        const auto recs = records(r, "hessian_quotient");
        const double v = max_of(r, "hessian_quotient");
        const int n = recs.empty() ? 0 : recs.front()->values.value("n_points", 0);
        o.require(v <= 1e-8 && n >= 100, family);
        o.note << family << " " << fmt(v) << " (" << n << " pts); ";
    }
}

void ac4(Outcome& o) {
    const auto& r = run_builtin("fock_identities");
    const double dual = max_of(r, "dual_identity");
    const double sub = max_of(r, "subbundle_24");
    const double normal = max_of(r, "normal_25");
    const double lognorm = min_of(r, "log_norm_psh");
    o.require(dual <= 1e-7, "dual");
    o.require(sub <= 1e-6, "subbundle");
    o.require(normal <= 1e-6, "normal tuple");
    o.require(lognorm >= -1e-5, "log-norm");
    const auto nb = records(r, "subbundle_24").front()->values.at("anti_cutoff").get<int>();
    const auto cfg = parse_config(builtin_scenario("fock_identities"));
    o.require(nb == cfg.basis_cutoff + 4, "N_b = N+4");
    o.note << "dual " << fmt(dual) << ", subbundle " << fmt(sub) << " (N_b=" << nb << "), normal " << fmt(normal)
           << ", log-norm min " << fmt(lognorm);
}

void ac5(Outcome& o) {
    for (const auto& id : scenarios_where(is_p1)) {
        const auto& r = run_builtin(id, {"psh", "nakano"});
        const double psh = min_of(r, "psh");
        const double nak = min_of(r, "nakano");
        if (psh < -1e-7) {
            o.note << id << " skipped (psh " << fmt(psh) << "); ";
            continue;
        }
        o.require(nak >= -1e-6, id);
        o.note << id << " " << fmt(nak) << "; ";
    }
}

void ac6(Outcome& o) {
    const auto& m = run_builtin("mobius_flat", {"degeneracy_5"});
    const double curv = max_of(m, "degeneracy_5.curvature_norm");
    const double dbar = max_of(m, "degeneracy_5.dbar_v_residual");
    o.require(curv <= 1e-5, "mobius curvature");
    o.require(dbar <= 1e-6, "mobius dbar V");
    const auto& h = run_builtin("hormander_eq");
    const double eq = max_of(h, "hormander_eq_52.equality");
    const auto gaps = records(h, "hormander_eq_52.gap");
    o.require(eq <= 1e-6, "equality");
    o.require(!gaps.empty() && std::all_of(gaps.begin(), gaps.end(), [](const CheckRecord* g) { return g->pass; }),
              "strict gap");
    o.note << "mobius |Theta| " << fmt(curv) << ", dbar V " << fmt(dbar) << "; equality rel " << fmt(eq);
    for (const auto* g : gaps) o.note << ", gap " << g->value << " >= " << g->tolerance;
}

void ac7(Outcome& o) {
    double toeplitz = kInf, cd = -kInf, real = -kInf;
    std::set<int> degrees;
    for (const auto& id : scenarios_where([](const json& j) { return lists_check(j, "toeplitz_61"); })) {
        const auto& r = run_builtin(id);
        toeplitz = std::min(toeplitz, min_of(r, "toeplitz_61"));
        for (const auto* q : records(r, "quantization.margin")) {
            toeplitz = std::min(toeplitz, q->value);
            degrees.insert(q->values.at("degree").get<int>());
        }
        if (has(r, "geodesic_identities.c_equals_d11")) cd = std::max(cd, max_of(r, "geodesic_identities.c_equals_d11"));
        if (has(r, "geodesic_identities.real_path")) real = std::max(real, max_of(r, "geodesic_identities.real_path"));
    }
    o.require(toeplitz >= -1e-5, "toeplitz margin");
    o.require(degrees.contains(4) && degrees.contains(6) && degrees.contains(8), "degrees 4,6,8");
    o.require(cd <= 1e-8 && cd > -kInf, "C = D11");
    o.require(real <= 1e-8 && real > -kInf, "real path");
    o.note << "min margin " << fmt(toeplitz) << ", |C-D11| " << fmt(cd) << ", |4C-rhs| " << fmt(real);
}

void ac8(Outcome& o) {
    int families = 0;
    for (const auto& id : scenarios_where([](const json& j) { return lists_check(j, "det_identity_7"); })) {
        const auto& r = run_builtin(id, {"det_identity_7"});
        const double v = max_of(r, "det_identity_7");
        o.require(v <= 1e-6, id);
        o.note << id << " " << fmt(v) << "; ";
        ++families;
    }
    o.require(families >= 3, "three families");
    const auto& c = run_builtin("proj_rank2_conformal", {"theorem_71"});
    std::map<int, double> eig;
    for (const auto* rec : records(c, "theorem_71")) eig[rec->values.at("bundle_degree").get<int>()] = rec->value;
    o.require(eig.contains(2) && std::abs(eig[2] - 2.0) <= 1e-4, "E(2)");
    o.require(eig.contains(3) && std::abs(eig[3] - 3.0) <= 1e-4, "E(3)");
    o.note << "E(2) " << eig[2] << ", E(3) " << eig[3];
}

void ac9(Outcome& o) {
    const auto& p = run_builtin("ext_product");
    double worst = 0.0;
    for (const auto* rec : records(p, "extension_ratio")) worst = std::max(worst, std::abs(rec->value - std::numbers::pi));
    o.require(has(p, "extension_ratio") && worst <= 1e-8, "ratio = pi");
    o.note << "|ratio - pi| " << fmt(worst);
    for (const auto& id : scenarios_where([](const json& j) { return lists_check(j, "extension_ratio"); })) {
        const double inc = max_of(run_builtin(id), "extension_ratio.monotone");
        o.require(inc <= 1e-9, id + " monotone");
        o.note << "; " << id << " increase " << fmt(inc);
    }
}

void ac10(Outcome& o) {
    double fd = -kInf, frame = -kInf;
    for (const auto& id : scenarios_where([](const json& j) { return lists_check(j, "fd_agreement"); })) {
        fd = std::max(fd, max_of(run_builtin(id, {"fd_agreement"}), "fd_agreement"));
    }
    for (const auto& id : scenarios_where([](const json& j) { return lists_check(j, "frame_invariance"); })) {
        frame = std::max(frame, max_of(run_builtin(id, {"frame_invariance"}), "frame_invariance"));
    }
    o.require(fd <= 1e-6 && fd > -kInf, "fd agreement");
    o.require(frame <= 1e-9 && frame > -kInf, "frame invariance");
    bool same = true;
    for (const char* id : {"fs_bump", "hormander_eq", "proj_rank2_conformal"}) {
        const auto cfg = parse_config(builtin_scenario(id));
        const auto a = run(cfg);
        const auto b = run(cfg);
        same = same && render_report(a, "json") == render_report(b, "json") &&
               render_report(a, "csv") == render_report(b, "csv");
    }
    o.require(same, "byte determinism");
    o.note << "fd " << fmt(fd) << ", frame drift " << fmt(frame) << ", reports identical " << (same ? "yes" : "no");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"AC1 fock oracle", ac1},          {"AC2 positivity pipeline", ac2}, {"AC3 hessian quotient", ac3},
        {"AC4 bundle identities", ac4},    {"AC5 compact fibers", ac5},      {"AC6 degeneracy", ac6},
        {"AC7 toeplitz bound", ac7},       {"AC8 rank-two bundles", ac8},    {"AC9 extension ratio", ac9},
        {"AC10 numerics hygiene", ac10},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            fn(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.note << " error: " << e.what();
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.note.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
