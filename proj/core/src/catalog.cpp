#include <numbers>

#include "dimlab/scenario.hpp"

namespace dimlab {

namespace {

using nlohmann::json;

json term(double re, std::vector<int> a, std::vector<int> b) { return {{"c", {re, 0.0}}, {"a", a}, {"b", b}}; }

/// |t|² for a one-dimensional base.
json abs_t_sq(double c = 1.0) { return json::array({term(c, {1}, {1})}); }

json fs_params(int l, json terms = json::array()) { return {{"l", l}, {"terms", std::move(terms)}}; }

json plane_scenario(const std::string& id, const std::string& description, const std::string& family,
                    json params, int cutoff, json t_grid, std::vector<std::string> checks) {
    return {{"scenario_id", id},
            {"description", description},
            {"weight", {{"family", family}, {"params", std::move(params)}}},
            {"fiber", {{"kind", "plane"}}},
            {"basis_cutoff", cutoff},
            {"quadrature", {{"n_radial", 160}, {"n_angular", 96}, {"cutoff_radius", 12.0}, {"envelope_scale", 1.0}}},
            {"t_grid", std::move(t_grid)},
            {"fd_step", 1e-3},
            {"derivative_mode", "analytic"},
            {"tolerances", json::object()},
            {"checks", std::move(checks)},
            {"check_params", json::object()},
            {"output", {{"path", nullptr}, {"format", "json"}}}};
}

json p1_scenario(const std::string& id, const std::string& description, const std::string& family, json params,
                 int degree, json t_grid, std::vector<std::string> checks) {
    json j = plane_scenario(id, description, family, std::move(params), 16, std::move(t_grid), std::move(checks));
    j["fiber"] = {{"kind", "p1"}, {"degree", degree}};
    j["basis_cutoff"] = degree - 2;
    j["quadrature"] = {{"n_radial", 40}, {"n_angular", 48}};
    j["tolerances"] = {{"nakano", 1e-6}};
    return j;
}

json proj_params(json metric, int l) { return {{"metric", std::move(metric)}, {"l", l}}; }

const json kGrid1 = json::array({json::array({0.0, 0.0}), json::array({0.5, 0.0}), json::array({0.3, 0.4}),
                                 json::array({-0.7, 0.2}), json::array({1.0, 0.0})});
const json kGridSmall = json::array({json::array({0.0, 0.0}), json::array({0.5, 0.0}), json::array({0.2, 0.3})});
const json kGridP1 = json::array({json::array({0.0, 0.0}), json::array({0.3, 0.0}), json::array({0.2, 0.4}),
                                  json::array({-0.5, 0.1})});
const json kGridReal = json::array({json::array({0.0, 0.0}), json::array({0.2, 0.0}), json::array({-0.3, 0.0}),
                                    json::array({0.1, 0.2})});
const json kGrid2 = json::array({
    json::array({json::array({0.0, 0.0}), json::array({0.0, 0.0})}),
    json::array({json::array({0.3, 0.0}), json::array({0.0, 0.2})}),
    json::array({json::array({0.2, 0.1}), json::array({-0.3, 0.2})}),
});

std::vector<json> build_catalog() {
    std::vector<json> c;

    c.push_back(plane_scenario("fock_scaled", "Fock weight (1+|t|^2)|z|^2 with N=16: closed-form oracle and positivity",
                               "fock_scaled", {{"m", 1}}, 16, kGrid1,
                               {"fock_oracle", "psh", "kernel_psh", "nakano", "griffiths", "hormander_31",
                                "log_norm_psh", "dual_identity", "hessian_quotient", "fd_agreement",
                                "frame_invariance"}));

    {
        const json params{{"m", 1},
                          {"q", json::array({term(1.0, {0}, {0}), term(1.0, {1}, {1})})},
                          {"l", json::array({term(0.5, {0}, {1})})},
                          {"c", abs_t_sq()}};
        c.push_back(plane_scenario("fock_general",
                                   "General Fock weight q|z|^2 + 2Re(l z) + c with q=1+|t|^2, l=conj(t)/2, c=|t|^2",
                                   "fock_general", params, 16, kGrid1,
                                   {"psh", "nakano", "griffiths", "hormander_31", "log_norm_psh", "dual_identity",
                                    "hessian_quotient", "fd_agreement", "frame_invariance"}));
    }

    c.push_back(plane_scenario("fock_scaled_2d", "Fock weight (1+|t1|^2+|t2|^2)|z|^2 over a two-dimensional base",
                               "fock_scaled", {{"m", 2}}, 16, kGrid2,
                               {"psh", "nakano", "griffiths", "hormander_31", "log_norm_psh", "dual_identity",
                                "normal_25", "frame_invariance"}));

    {
        json s = plane_scenario("fock_identities", "Curvature identities on the Fock weight with N=8 and N_b=12",
                                "fock_scaled", {{"m", 1}}, 8, kGridSmall,
                                {"subbundle_24", "normal_25", "dual_identity", "log_norm_psh", "hormander_31"});
        s["check_params"] = {{"subbundle_24", {{"anti_cutoff", 12}}}};
        c.push_back(s);
    }

    c.push_back(plane_scenario("fock_shifted", "Translated Gaussian |z-t|^2: degenerate psh weight", "fock_shifted",
                               json::object(), 16, kGridSmall,
                               {"psh", "kernel_psh", "hessian_quotient", "fd_agreement"}));

    c.push_back(p1_scenario("fs_flat", "Fubini-Study weight of degree 4 with no t-dependence", "fs_family",
                            fs_params(4), 4, kGridP1,
                            {"psh", "nakano", "dual_identity", "normal_25", "degeneracy_5", "toeplitz_61",
                             "geodesic_identities"}));

    {
        json s = p1_scenario("fs_bump", "Fubini-Study degree 4 with the path psi = |t|^2 chi0", "fs_family",
                             fs_params(4, json::array({{{"g", "chi0"}, {"coef", abs_t_sq()}}})), 4, kGridP1,
                             {"psh", "nakano", "griffiths", "dual_identity", "log_norm_psh", "normal_25",
                              "toeplitz_61", "quantization", "geodesic_identities", "degeneracy_5",
                              "hessian_quotient", "fd_agreement", "frame_invariance"});
        s["check_params"] = {{"degeneracy_5", {{"expect_flat", false}}}, {"quantization", {{"degrees", {4, 6, 8}}}}};
        c.push_back(s);
    }

    {
        const json terms = json::array({
            {{"g", "one"}, {"coef", abs_t_sq()}},
            {{"g", "chi0"}, {"coef", abs_t_sq(0.5)}},
            {{"g", "re_z"}, {"coef", json::array({term(0.3, {1}, {0})})}},
            {{"g", "im_z"}, {"coef", json::array({term(0.2, {2}, {0})})}},
        });
        json s = p1_scenario("fs_generic", "Fubini-Study degree 6 with a generic non-symmetric perturbation",
                             "fs_family", fs_params(6, terms), 6, kGridP1,
                             {"psh", "nakano", "dual_identity", "degeneracy_5", "toeplitz_61", "quantization",
                              "geodesic_identities", "hessian_quotient", "fd_agreement"});
        s["check_params"] = {{"degeneracy_5", {{"expect_flat", false}}}, {"quantization", {{"degrees", {4, 6, 8}}}}};
        c.push_back(s);
    }

    {
        json s = p1_scenario("mobius_flat", "Moebius flow l log(1+|z-t|^2): gauge-flat degenerate family",
                             "mobius_flow", {{"l", 4}}, 4, kGridP1,
                             {"psh", "nakano", "degeneracy_5", "toeplitz_61", "quantization", "geodesic_identities",
                              "dual_identity", "hessian_quotient", "fd_agreement"});
        s["check_params"] = {{"quantization", {{"degrees", {4, 6, 8}}, {"expect_flat", true}}}};
        c.push_back(s);
    }

    {
        json s = p1_scenario("hormander_eq", "Equality case of the L2 estimate on the Fubini-Study line of degree 4",
                             "fs_family", fs_params(4), 4, json::array({json::array({0.0, 0.0})}),
                             {"hormander_eq_52"});
        s["check_params"] = {{"hormander_eq_52",
                              {{"gamma", {1.0}}, {"epsilon", 0.1}, {"max_antidegree", 8}, {"gap_min", 0.0038497}}}};
        c.push_back(s);
    }

    {
        json s = p1_scenario("path_real_affine", "Real affine path psi = (Re t) Re z/(1+|z|^2)/2 over degree 4",
                             "fs_family",
                             fs_params(4, json::array({{{"g", "re_z"}, {"coef", json::array({term(0.5, {1}, {0})})}}})),
                             4, kGridReal, {"toeplitz_61", "quantization", "geodesic_identities"});
        s["check_params"] = {{"geodesic_identities", {{"real_path", true}}}, {"quantization", {{"degrees", {4, 6, 8}}}}};
        c.push_back(s);
    }

    {
        const json terms = json::array({
            {{"g", "chi0"}, {"coef", json::array({term(0.5, {2}, {0}), term(0.5, {1}, {1})})}},
            {{"g", "im_z"}, {"coef", json::array({term(0.3, {1}, {0})})}},
        });
        json s = p1_scenario("path_real_convex", "Real path psi = (Re t)^2 chi0 + 0.3 (Re t) Im z/(1+|z|^2)",
                             "fs_family", fs_params(4, terms), 4, kGridReal,
                             {"toeplitz_61", "quantization", "geodesic_identities"});
        s["check_params"] = {{"geodesic_identities", {{"real_path", true}}}, {"quantization", {{"degrees", {4, 6, 8}}}}};
        c.push_back(s);
    }

    {
        json s = p1_scenario("ext_product", "Minimal extension over the unit disk for a t-independent weight",
                             "fs_family", fs_params(4), 4, json::array({json::array({0.0, 0.0})}),
                             {"extension_ratio"});
        s["check_params"] = {{"extension_ratio", {{"cutoffs", {0, 1, 2, 3}}, {"expected", std::numbers::pi}}}};
        c.push_back(s);
    }

    {
        json s = p1_scenario("ext_bump", "Minimal extension over the unit disk for psi = |t|^2 chi0", "fs_family",
                             fs_params(4, json::array({{{"g", "chi0"}, {"coef", abs_t_sq()}}})), 4,
                             json::array({json::array({0.0, 0.0})}), {"extension_ratio"});
        s["check_params"] = {{"extension_ratio", {{"cutoffs", {0, 1, 2, 3}}, {"max_ratio", 2.0 * std::numbers::pi}}}};
        c.push_back(s);
    }

    {
        json s = p1_scenario("proj_rank2_conformal", "O(3) on P(V*) for h_V = exp(-|t|^2) I", "proj_induced",
                             proj_params({{"kind", "conformal"}, {"c", 1.0}}, 3), 3, kGridP1,
                             {"psh", "nakano", "det_identity_7", "theorem_71"});
        s["check_params"] = {{"theorem_71", {{"sym_powers", {0, 1, 2}}, {"expected", {2.0, 3.0, 4.0}}}}};
        c.push_back(s);
    }

    {
        json s = p1_scenario("proj_rank2_diagonal", "O(3) on P(V*) for h_V = diag(exp(-|t|^2), exp(-2|t|^2))",
                             "proj_induced", proj_params({{"kind", "diagonal"}, {"a", 1.0}, {"b", 2.0}}, 3), 3,
                             kGridP1, {"psh", "nakano", "det_identity_7", "theorem_71"});
        s["check_params"] = {{"theorem_71", {{"sym_powers", {0, 1}}}}};
        c.push_back(s);
    }

    {
        c.push_back(p1_scenario("proj_rank2_unimodular", "O(3) on P(V*) for h_V = A^H A, A = [[1, t], [0, 1]]",
                                "proj_induced", proj_params({{"kind", "unimodular"}}, 3), 3, kGridP1,
                                {"det_identity_7"}));
    }
    return c;
}

const std::vector<json>& catalog() {
    static const std::vector<json> c = build_catalog();
    return c;
}

}  // namespace

std::vector<CatalogEntry> list_scenarios() {
    std::vector<CatalogEntry> out;
    for (const auto& j : catalog()) out.push_back({j.at("scenario_id"), j.at("description")});
    return out;
}

nlohmann::json builtin_scenario(const std::string& id) {
    for (const auto& j : catalog()) {
        if (j.at("scenario_id") == id) return j;
    }
    throw ScenarioError("unknown built-in scenario '" + id + "'");
}

}  // namespace dimlab
