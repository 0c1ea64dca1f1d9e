#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "check_context.hpp"
#include "dimlab/kahlerpath.hpp"
#include "dimlab/linalg.hpp"
#include "dimlab/rng.hpp"

namespace dimlab::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite_pass(double value, bool ok) { return std::isfinite(value) && ok; }

std::vector<double> json_doubles(const nlohmann::json& p, const char* key, std::vector<double> fallback) {
    if (!p.contains(key)) return fallback;
    return p.at(key).get<std::vector<double>>();
}

std::vector<int> json_ints(const nlohmann::json& p, const char* key, std::vector<int> fallback) {
    if (!p.contains(key)) return fallback;
    return p.at(key).get<std::vector<int>>();
}

/// Fiber sample points on circles of the given radii.
std::vector<cplx> z_points(const CheckContext& ctx, const nlohmann::json& p) {
    const std::vector<double> fallback =
        ctx.is_p1() ? std::vector<double>{0.0, 0.5, 1.0, 2.0, 4.0} : std::vector<double>{0.0, 0.25, 0.5, 1.0, 2.0};
    const auto radii = json_doubles(p, "z_radii", fallback);
    const int n_angles = p.value("n_angles", 6);
    std::vector<cplx> pts;
    for (double r : radii) {
        if (r == 0.0) {
            pts.emplace_back(0.0, 0.0);
            continue;
        }
        for (int a = 0; a < n_angles; ++a) {
            pts.push_back(std::polar(r, 2.0 * std::numbers::pi * (a + 0.5) / n_angles));
        }
    }
    return pts;
}

CVec coefficients(const nlohmann::json& p, const char* key, int d) {
    CVec u = CVec::Zero(d);
    if (!p.contains(key)) {
        u(0) = 1.0;
        return u;
    }
    const auto& arr = p.at(key);
    if (static_cast<int>(arr.size()) > d) throw PreconditionError(std::string(key) + ": more coefficients than basis elements");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto& c = arr[i];
        u(static_cast<Eigen::Index>(i)) = c.is_array() ? cplx(c.at(0).get<double>(), c.at(1).get<double>())
                                                       : cplx(c.get<double>(), 0.0);
    }
    return u;
}

/// Rescale so that Σ_j u_j^H h u_j = 1.
CMat normalize_tuple(CMat U, const CMat& h) {
    double n = 0.0;
    for (Eigen::Index j = 0; j < U.cols(); ++j) n += U.col(j).dot(h * U.col(j)).real();
    if (!(n > 0.0)) throw PreconditionError("tuple has zero norm");
    return U / std::sqrt(n);
}

CMat random_tuple(std::mt19937_64& rng, int d, int m) {
    CMat U(d, m);
    for (int j = 0; j < m; ++j) {
        for (int a = 0; a < d; ++a) U(a, j) = uniform_square(rng);
    }
    return U;
}

/// Unit-vector tuples: e_α in each slot and, for m = 2, every pair (e_α, e_β).
std::vector<CMat> frame_tuples(int d, int m, const std::vector<int>& indices) {
    std::vector<CMat> tuples;
    for (int a : indices) {
        for (int j = 0; j < m; ++j) {
            CMat U = CMat::Zero(d, m);
            U(a, j) = 1.0;
            tuples.push_back(U);
        }
    }
    if (m == 2) {
        for (int a : indices) {
            for (int b : indices) {
                CMat U = CMat::Zero(d, m);
                U(a, 0) = 1.0;
                U(b, 1) = 1.0;
                tuples.push_back(U);
            }
        }
    }
    return tuples;
}

std::vector<int> all_indices(int d) {
    std::vector<int> idx(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) idx[static_cast<std::size_t>(a)] = a;
    return idx;
}

std::vector<int> sparse_indices(int d) {
    std::vector<int> idx{0};
    if (d > 2) idx.push_back(1);
    if (d > 3) idx.push_back(d / 2);
    if (d > 1) idx.push_back(d - 1);
    return idx;
}

CMat vec(const CMat& U) { return Eigen::Map<const CVec>(U.data(), U.size()); }

PathSpec path_of(const CheckContext& ctx, double scale) { return {ctx.weight, ctx.basis, ctx.rule, scale}; }

void require_p1(const CheckContext& ctx, const char* check) {
    if (!ctx.is_p1()) throw PreconditionError(std::string(check) + ": needs a p1 fiber");
}

void require_plane(const CheckContext& ctx, const char* check) {
    if (ctx.is_p1()) throw PreconditionError(std::string(check) + ": needs a plane fiber");
}

void require_m1(const CheckContext& ctx, const char* check) {
    if (ctx.base_dim() != 1) throw PreconditionError(std::string(check) + ": needs base dimension 1");
}

const RankTwoMetricFamily& require_metric(const CheckContext& ctx, const char* check) {
    if (!ctx.metric) throw PreconditionError(std::string(check) + ": needs a proj_induced weight");
    return *ctx.metric;
}

// ------------------------------------------------------------------ checks

void check_psh(CheckContext& ctx) {
    const auto p = ctx.params("psh");
    const auto zs = z_points(ctx, p);
    for (const auto& t : ctx.cfg.t_grid) {
        std::vector<WeightPoint> pts;
        for (const cplx& z : zs) pts.push_back({t, z});
        ctx.lower("psh", t, psh_check(*ctx.weight, pts, ctx.cfg.derivative_mode, ctx.fd));
    }
}

void check_kernel_psh(CheckContext& ctx) {
    require_plane(ctx, "kernel_psh");
    const auto p = ctx.params("kernel_psh");
    nlohmann::json zp = p;
    if (!zp.contains("z_radii")) zp["z_radii"] = {0.0, 0.5, 1.0};
    if (!zp.contains("n_angles")) zp["n_angles"] = 3;
    const auto zs = z_points(ctx, zp);
    for (const auto& t : ctx.cfg.t_grid) {
        std::vector<KernelPoint> pts;
        for (const cplx& z : zs) pts.push_back({t, z});
        ctx.lower("kernel_psh", t, log_kernel_psh_report(*ctx.weight, ctx.basis, ctx.rule, pts, ctx.fd));
    }
}

void check_nakano(CheckContext& ctx) {
    for (const auto& t : ctx.cfg.t_grid) {
        const auto curv = chern_curvature(*ctx.field, t);
        ctx.lower("nakano", t, nakano_min_eig(curv),
                  {{"curvature_norm", curvature_norm(curv)}, {"hermitian_defect", curvature_hermitian_defect(curv)}});
    }
}

void check_griffiths(CheckContext& ctx) {
    const int grid = ctx.params("griffiths").value("grid", 24);
    for (const auto& t : ctx.cfg.t_grid) {
        const auto curv = chern_curvature(*ctx.field, t);
        const double g = griffiths_min(curv, grid);
        const double n = nakano_min_eig(curv);
        ctx.lower("griffiths", t, g);
        ctx.upper("griffiths.dominates_nakano", t, n - g, {{"nakano_min_eig", n}});
    }
}

void check_dual_identity(CheckContext& ctx) {
    const auto p = ctx.params("dual_identity");
    const int n = p.value("n_tuples", 8);
    const auto seed = p.value("seed", std::uint64_t{20240917});
    for (const auto& t : ctx.cfg.t_grid) ctx.upper("dual_identity", t, dual_curvature_residual(ctx.field, t, n, seed));
}

void check_log_norm_psh(CheckContext& ctx) {
    const auto p = ctx.params("log_norm_psh");
    const CVec xi = coefficients(p, "section", ctx.field->dim());
    const bool exp_t = p.value("exp_t", false);
    const auto section = [&](const BasePoint& t) -> CVec {
        if (!exp_t) return xi;
        return std::exp(t(0)) * xi;
    };
    for (const auto& t : ctx.cfg.t_grid) ctx.lower("log_norm_psh", t, log_norm_psh_residual(*ctx.field, section, {t}));
}

void check_subbundle(CheckContext& ctx) {
    require_plane(ctx, "subbundle_24");
    const auto p = ctx.params("subbundle_24");
    const int N = ctx.cfg.basis_cutoff;
    const int Nb = p.value("anti_cutoff", N + 4);
    const int n_random = p.value("n_random", 2);
    std::mt19937_64 rng(p.value("seed", std::uint64_t{7}));
    const int d = ctx.field->dim();
    const int m = ctx.base_dim();
    const auto indices = p.contains("frame") ? json_ints(p, "frame", {}) : sparse_indices(d);
    for (const auto& t : ctx.cfg.t_grid) {
        const CMat h = ctx.field->gram(t);
        std::vector<CMat> tuples = frame_tuples(d, m, indices);
        for (int r = 0; r < n_random; ++r) tuples.push_back(random_tuple(rng, d, m));
        double worst = 0.0;
        for (const auto& U : tuples) {
            worst = std::max(worst, subbundle_formula_residual(ctx.weight, N, Nb, t, normalize_tuple(U, h), ctx.rule));
        }
        ctx.upper("subbundle_24", t, worst, {{"anti_cutoff", Nb}, {"n_tuples", tuples.size()}});
    }
}

void check_hormander_31(CheckContext& ctx) {
    require_plane(ctx, "hormander_31");
    const auto p = ctx.params("hormander_31");
    const int d = ctx.field->dim();
    const int m = ctx.base_dim();
    // the left side is the curvature of the whole space, approximated by a wider truncation
    const int cutoff = p.value("curvature_cutoff", ctx.cfg.basis_cutoff + 8);
    if (cutoff < ctx.cfg.basis_cutoff) throw PreconditionError("hormander_31: curvature_cutoff below basis_cutoff");
    const bool analytic = ctx.cfg.derivative_mode == DerivativeMode::analytic && ctx.weight->has_analytic();
    const L2GramField wide(Basis::plane(cutoff), ctx.weight, ctx.rule,
                           analytic ? GramDerivativeMode::analytic_weight : GramDerivativeMode::finite_difference,
                           analytic ? DerivativeMode::analytic : DerivativeMode::finite_difference, ctx.fd);
    const int dw = wide.dim();
    for (const auto& t : ctx.cfg.t_grid) {
        const CMat Mw = hormander_bound_matrix(wide, t);
        CMat M(m * d, m * d);
        for (int j = 0; j < m; ++j) {
            for (int k = 0; k < m; ++k) M.block(k * d, j * d, d, d) = Mw.block(k * dw, j * dw, d, d);
        }
        const CMat h = ctx.field->gram(t);
        double worst = kInf;
        for (const auto& U : frame_tuples(d, m, all_indices(d))) {
            const CMat v = vec(normalize_tuple(U, h));
            worst = std::min(worst, (v.adjoint() * M * v)(0, 0).real());
        }
        CMat Hb = CMat::Zero(m * d, m * d);
        for (int j = 0; j < m; ++j) Hb.block(j * d, j * d, d, d) = h;
        ctx.lower("hormander_31", t, worst,
                  {{"min_generalized_eig", min_generalized_eigenvalue(M, Hb)}, {"curvature_cutoff", cutoff}});
    }
}

void check_normal_25(CheckContext& ctx) {
    const auto p = ctx.params("normal_25");
    const int n_random = p.value("n_random", 2);
    std::mt19937_64 rng(p.value("seed", std::uint64_t{11}));
    const int d = ctx.field->dim();
    const int m = ctx.base_dim();
    const auto indices = p.contains("frame") ? json_ints(p, "frame", {}) : sparse_indices(d);
    for (const auto& t : ctx.cfg.t_grid) {
        const CMat h = ctx.field->gram(t);
        std::vector<CMat> tuples;
        for (int a : indices) {
            CMat U = CMat::Zero(d, m);
            for (int j = 0; j < m; ++j) U((a + j) % d, j) = 1.0;
            tuples.push_back(U);
        }
        for (int r = 0; r < n_random; ++r) tuples.push_back(random_tuple(rng, d, m));
        double worst = 0.0;
        for (const auto& U : tuples) {
            worst = std::max(worst, normal_tuple_second_derivative_residual(*ctx.field, t, normalize_tuple(U, h)));
        }
        ctx.upper("normal_25", t, worst, {{"n_tuples", tuples.size()}});
    }
}

void check_degeneracy(CheckContext& ctx) {
    require_m1(ctx, "degeneracy_5");
    const auto p = ctx.params("degeneracy_5");
    const bool expect_flat = p.value("expect_flat", true);
    const double step = p.value("fd_step", 1e-4);
    for (const auto& t : ctx.cfg.t_grid) {
        const auto rec = degeneracy_diagnostics(*ctx.field, t, step);
        const nlohmann::json extra{{"min_curv_eig", rec.min_curv_eig}, {"max_abs_v", rec.max_abs_v}};
        if (expect_flat) {
            ctx.upper("degeneracy_5.curvature_norm", t, rec.curvature_norm, extra);
            ctx.upper("degeneracy_5.dbar_v_residual", t, rec.dbar_v_residual, extra);
        } else {
            ctx.recorded("degeneracy_5.curvature_norm", t, rec.curvature_norm, extra);
            ctx.recorded("degeneracy_5.dbar_v_residual", t, rec.dbar_v_residual, extra);
        }
    }
}

void check_hormander_eq(CheckContext& ctx) {
    require_p1(ctx, "hormander_eq_52");
    const auto p = ctx.params("hormander_eq_52");
    const int l = ctx.cfg.degree;
    const CVec g = coefficients(p, "gamma", l - 1);
    const double eps = p.value("epsilon", 0.1);
    const int B = p.value("max_antidegree", 8);
    const double gap_min = p.value("gap_min", 0.0);
    const auto& nodes = ctx.rule.nodes();
    std::vector<cplx> gamma(nodes.size());
    std::vector<cplx> gamma_dz(nodes.size());
    std::vector<cplx> perturbed(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        cplx v{0.0, 0.0};
        cplx dv{0.0, 0.0};
        for (Eigen::Index k = g.size() - 1; k >= 0; --k) {
            dv = dv * nodes[i] + v;
            v = v * nodes[i] + g(k);
        }
        gamma[i] = v;
        gamma_dz[i] = dv;
        perturbed[i] = v + eps * std::conj(nodes[i]);
    }
    for (const auto& t : ctx.cfg.t_grid) {
        const auto w = hormander_equality_witness(l, *ctx.weight, t, gamma, gamma_dz, ctx.rule, ctx.cfg.derivative_mode);
        const double rel = std::abs(w.norm_mu_sq / w.norm_f_sq - 1.0);
        ctx.upper("hormander_eq_52.equality", t, rel, {{"norm_mu_sq", w.norm_mu_sq}, {"norm_f_sq", w.norm_f_sq}});
        ctx.upper("hormander_eq_52.orth", t, w.orth_residual);
        const auto s = minimal_dbar_solution(l, *ctx.weight, t, perturbed, ctx.rule, B, ctx.cfg.derivative_mode);
        ctx.at_least("hormander_eq_52.gap", t, s.norm_f_sq - s.norm_mu_sq, gap_min,
                     {{"norm_mu_sq", s.norm_mu_sq}, {"norm_f_sq", s.norm_f_sq}, {"epsilon", eps},
                      {"space_dim", s.space_dim}});
    }
}

void check_toeplitz(CheckContext& ctx) {
    require_m1(ctx, "toeplitz_61");
    const double scale = ctx.params("toeplitz_61").value("scale", 1.0);
    const PathSpec path = path_of(ctx, scale);
    for (const auto& t : ctx.cfg.t_grid) {
        ctx.lower("toeplitz_61", t, toeplitz_bound_margin(path, t(0), ctx.cfg.derivative_mode), {{"scale", scale}});
    }
}

void check_quantization(CheckContext& ctx) {
    require_p1(ctx, "quantization");
    require_m1(ctx, "quantization");
    const auto p = ctx.params("quantization");
    const auto degrees = json_ints(p, "degrees", {4, 6, 8});
    const bool expect_flat = p.value("expect_flat", false);
    const auto builder = [&](int l) {
        nlohmann::json wp = ctx.cfg.weight_params;
        wp["l"] = l;
        return PathSpec{build_weight(ctx.cfg.weight_family, wp).weight, Basis::p1(l), ctx.rule, 1.0};
    };
    std::vector<cplx> ts;
    for (const auto& t : ctx.cfg.t_grid) ts.push_back(t(0));
    for (const auto& row : quantization_report(builder, ts, degrees, ctx.cfg.derivative_mode)) {
        const nlohmann::json extra{
            {"degree", row.degree}, {"nakano_min_eig", row.nakano_min_eig}, {"min_c", row.min_c}};
        ctx.lower("quantization.margin", std::nullopt, row.margin, extra);
        if (expect_flat) {
            ctx.upper("quantization.flat", std::nullopt, std::abs(row.nakano_min_eig), extra);
        } else {
            ctx.recorded("quantization.nakano_min_eig", std::nullopt, row.nakano_min_eig, extra);
        }
    }
}

void check_geodesic_identities(CheckContext& ctx) {
    require_m1(ctx, "geodesic_identities");
    const auto p = ctx.params("geodesic_identities");
    const auto zs = z_points(ctx, p);
    const PathSpec path = path_of(ctx, 1.0);
    for (const auto& t : ctx.cfg.t_grid) {
        double worst = 0.0;
        for (const cplx& z : zs) {
            const double c = geodesic_curvature(path, t(0), z);
            const double d11 = d_matrix(*ctx.weight, t, z)(0, 0).real();
            worst = std::max(worst, std::abs(c - d11));
        }
        ctx.upper("geodesic_identities.c_equals_d11", t, worst);
        if (p.value("real_path", false)) {
            double r = 0.0;
            for (const cplx& z : zs) r = std::max(r, real_path_identity(path, t(0).real(), z, ctx.fd).residual());
            ctx.upper("geodesic_identities.real_path", base_point(t(0).real()), r);
        }
    }
}

void check_det_identity(CheckContext& ctx) {
    const auto& fam = require_metric(ctx, "det_identity_7");
    std::vector<cplx> ts;
    for (const auto& t : ctx.cfg.t_grid) ts.push_back(t(0));
    ctx.upper("det_identity_7", std::nullopt, det_identity_residual(fam, ts, ctx.rule),
              {{"c2", universal_constant_c2(ctx.rule)}, {"family", fam.id()}});
}

void check_theorem_71(CheckContext& ctx) {
    const auto& fam = require_metric(ctx, "theorem_71");
    const auto p = ctx.params("theorem_71");
    const auto powers = json_ints(p, "sym_powers", {0, 1});
    const bool has_expected = p.contains("expected");
    const auto expected = json_doubles(p, "expected", {});
    if (has_expected && expected.size() != powers.size()) {
        throw PreconditionError("theorem_71: 'expected' must match 'sym_powers'");
    }
    std::vector<cplx> ts;
    for (const auto& t : ctx.cfg.t_grid) ts.push_back(t(0));
    for (std::size_t i = 0; i < powers.size(); ++i) {
        const auto r = theorem_71_check(fam, ts, powers[i], ctx.rule);
        const nlohmann::json extra{{"sym_power", powers[i]},
                                   {"bundle_degree", 2 + powers[i]},
                                   {"hypothesis_min", r.hypothesis_min},
                                   {"strictly_positive", r.strictly_positive},
                                   {"diagnostic", r.diagnostic}};
        if (has_expected) {
            ctx.near("theorem_71", std::nullopt, r.min_nakano_eig, expected[i], extra);
        } else {
            ctx.lower("theorem_71", std::nullopt, r.min_nakano_eig, extra);
        }
    }
}

void check_extension_ratio(CheckContext& ctx) {
    require_p1(ctx, "extension_ratio");
    require_m1(ctx, "extension_ratio");
    const auto p = ctx.params("extension_ratio");
    const auto cutoffs = json_ints(p, "cutoffs", {0, 1, 2, 3});
    const CVec u = coefficients(p, "section", ctx.basis.dim());
    const nlohmann::json tr = p.value("t_rule", nlohmann::json::object());
    const auto t_rule =
        build_plane_rule(PlaneDomainSpec::disk(1.0), tr.value("n_radial", 24), tr.value("n_angular", 32));
    double previous = kInf;
    double increase = 0.0;
    for (int c : cutoffs) {
        const auto r = minimal_extension_ratio(*ctx.weight, ctx.basis, u, c, t_rule, ctx.rule);
        const nlohmann::json extra{{"t_poly_cutoff", c}};
        if (p.contains("expected")) {
            ctx.near("extension_ratio", std::nullopt, r.ratio, p.at("expected").get<double>(), extra);
        } else if (p.contains("max_ratio")) {
            ctx.at_most("extension_ratio", std::nullopt, r.ratio, p.at("max_ratio").get<double>(), extra);
        } else {
            ctx.recorded("extension_ratio", std::nullopt, r.ratio, extra);
        }
        if (std::isfinite(previous)) increase = std::max(increase, r.ratio - previous);
        previous = r.ratio;
    }
    ctx.upper("extension_ratio.monotone", std::nullopt, increase);
}

void check_hessian_quotient(CheckContext& ctx) {
    require_m1(ctx, "hessian_quotient");
    const auto p = ctx.params("hessian_quotient");
    const int n = p.value("n_points", 100);
    const double t_radius = p.value("t_radius", 0.8);
    const double z_radius = p.value("z_radius", 2.0);
    const double min_fiber = p.value("min_fiber_hessian", 0.1);
    std::mt19937_64 rng(p.value("seed", std::uint64_t{42}));
    double worst = 0.0;
    int accepted = 0;
    int attempts = 0;
    while (accepted < n) {
        if (++attempts > 100 * n) throw PreconditionError("hessian_quotient: too few fiber-strict sample points");
        const cplx t = t_radius * uniform_square(rng);
        const cplx z = z_radius * uniform_square(rng);
        if (std::abs(t) > t_radius || std::abs(z) > z_radius) continue;
        if (wirtinger(*ctx.weight, base_point(t), z).hess_zz < min_fiber) continue;
        worst = std::max(worst, hessian_quotient_check(*ctx.weight, t, z, ctx.cfg.derivative_mode, ctx.fd));
        ++accepted;
    }
    ctx.upper("hessian_quotient", std::nullopt, worst, {{"n_points", accepted}});
}

void check_fd_agreement(CheckContext& ctx) {
    if (!ctx.weight->has_analytic()) throw PreconditionError("fd_agreement: weight has no analytic derivative table");
    const auto p = ctx.params("fd_agreement");
    nlohmann::json zp = p;
    if (!zp.contains("z_radii")) zp["z_radii"] = {0.3, 1.0};
    const auto zs = z_points(ctx, zp);
    const L2GramField fd_field(ctx.basis, ctx.weight, ctx.rule, GramDerivativeMode::finite_difference,
                               DerivativeMode::finite_difference, ctx.fd);
    const L2GramField an_field(ctx.basis, ctx.weight, ctx.rule, GramDerivativeMode::analytic_weight,
                               DerivativeMode::analytic, ctx.fd);
    for (const auto& t : ctx.cfg.t_grid) {
        double worst = 0.0;
        for (const cplx& z : zs) worst = std::max(worst, fd_analytic_discrepancy(*ctx.weight, t, z, ctx.fd));
        ctx.upper("fd_agreement", t, worst);
        const auto a = chern_curvature(an_field, t);
        const auto f = chern_curvature(fd_field, t);
        // entries compared in the frame normalized by the Gram diagonal
        const int d = a.dim();
        double diff = 0.0;
        for (std::size_t i = 0; i < a.theta.size(); ++i) {
            for (int r = 0; r < d; ++r) {
                for (int c = 0; c < d; ++c) {
                    const double s = std::sqrt(a.h(r, r).real() / a.h(c, c).real());
                    diff = std::max(diff, s * std::abs(a.theta[i](r, c) - f.theta[i](r, c)));
                }
            }
        }
        ctx.upper("fd_agreement.curvature", t, diff);
    }
}

void check_frame_invariance(CheckContext& ctx) {
    const auto p = ctx.params("frame_invariance");
    std::mt19937_64 rng(p.value("seed", std::uint64_t{5}));
    const double amp = p.value("amplitude", 0.3);
    const int d = ctx.field->dim();
    CMat A = CMat::Identity(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) A(i, j) += amp * uniform_square(rng) / std::sqrt(static_cast<double>(d));
    }
    // mix in the frame normalized at the first grid point, otherwise Fock-type Grams become singular
    const CMat h0 = ctx.field->gram(ctx.cfg.t_grid.front());
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) A(i, j) *= std::sqrt(h0(j, j).real() / h0(i, i).real());
    }
    const auto changed = std::make_shared<FrameChangedField>(ctx.field, A);
    for (const auto& t : ctx.cfg.t_grid) {
        const double a = nakano_min_eig(chern_curvature(*ctx.field, t));
        const double b = nakano_min_eig(chern_curvature(*changed, t));
        ctx.upper("frame_invariance", t, std::abs(a - b), {{"nakano_min_eig", a}});
    }
}

void check_fock_oracle(CheckContext& ctx) {
    if (ctx.cfg.weight_family != "fock_scaled" || ctx.base_dim() != 1) {
        throw PreconditionError("fock_oracle: needs the fock_scaled family with base dimension 1");
    }
    require_plane(ctx, "fock_oracle");
    const int d = ctx.field->dim();
    for (const auto& t : ctx.cfg.t_grid) {
        const double a = 1.0 + std::norm(t(0));
        const CMat h = ctx.field->gram(t);
        double gram_err = 0.0;
        double fact = 1.0;
        for (int k = 0; k < d; ++k) {
            if (k > 0) fact *= k;
            const double expected = std::numbers::pi * fact / std::pow(a, k + 1);
            gram_err = std::max(gram_err, std::abs(h(k, k).real() / expected - 1.0));
            for (int j = 0; j < d; ++j) {
                if (j != k) gram_err = std::max(gram_err, std::abs(h(j, k)) / std::sqrt(std::abs(h(j, j) * h(k, k))));
            }
        }
        ctx.upper("fock_oracle.gram", t, gram_err);
        const double K = kernel_eval(ctx.basis, h, 0.0, 0.0).real();
        ctx.upper("fock_oracle.kernel", t, std::abs(K - a / std::numbers::pi), {{"kernel", K}});
        const auto curv = chern_curvature(*ctx.field, t);
        double theta_err = 0.0;
        for (int k = 0; k < d; ++k) {
            const double expected = (k + 1) / (a * a);
            for (int j = 0; j < d; ++j) {
                const cplx v = curv.at(0, 0)(j, k);
                theta_err = std::max(theta_err, j == k ? std::abs(v / expected - 1.0) : std::abs(v) / expected);
            }
        }
        ctx.upper("fock_oracle.curvature", t, theta_err);
    }
}

}  // namespace

// ------------------------------------------------------------------ context

double CheckContext::tol(const std::string& name) const {
    if (auto it = cfg.tolerances.find(name); it != cfg.tolerances.end()) return it->second;
    const auto dot = name.find('.');
    if (dot != std::string::npos) {
        if (auto it = cfg.tolerances.find(name.substr(0, dot)); it != cfg.tolerances.end()) return it->second;
    }
    return default_tolerance(name);
}

nlohmann::json CheckContext::params(const std::string& check) const {
    if (cfg.check_params.contains(check)) return cfg.check_params.at(check);
    return nlohmann::json::object();
}

void CheckContext::upper(const std::string& name, const std::optional<BasePoint>& t, double value,
                         nlohmann::json values) {
    const double tl = tol(name);
    out->push_back({name, t, value, tl, "value <= tolerance", finite_pass(value, value <= tl), std::move(values)});
}

void CheckContext::lower(const std::string& name, const std::optional<BasePoint>& t, double value,
                         nlohmann::json values) {
    const double tl = tol(name);
    out->push_back({name, t, value, tl, "value >= -tolerance", finite_pass(value, value >= -tl), std::move(values)});
}

void CheckContext::at_least(const std::string& name, const std::optional<BasePoint>& t, double value, double bound,
                            nlohmann::json values) {
    out->push_back({name, t, value, bound, "value >= tolerance", finite_pass(value, value >= bound), std::move(values)});
}

void CheckContext::at_most(const std::string& name, const std::optional<BasePoint>& t, double value, double bound,
                           nlohmann::json values) {
    out->push_back({name, t, value, bound, "value <= tolerance", finite_pass(value, value <= bound), std::move(values)});
}

void CheckContext::near(const std::string& name, const std::optional<BasePoint>& t, double value, double expected,
                        nlohmann::json values) {
    const double tl = tol(name);
    values["expected"] = expected;
    out->push_back({name, t, value, tl, "|value - expected| <= tolerance",
                    finite_pass(value, std::abs(value - expected) <= tl), std::move(values)});
}

void CheckContext::recorded(const std::string& name, const std::optional<BasePoint>& t, double value,
                            nlohmann::json values) {
    out->push_back({name, t, value, 0.0, "recorded", std::isfinite(value), std::move(values)});
}

const std::vector<CheckEntry>& check_registry() {
    static const std::vector<CheckEntry> registry{
        {"psh", check_psh},
        {"kernel_psh", check_kernel_psh},
        {"nakano", check_nakano},
        {"griffiths", check_griffiths},
        {"dual_identity", check_dual_identity},
        {"subbundle_24", check_subbundle},
        {"hormander_31", check_hormander_31},
        {"normal_25", check_normal_25},
        {"degeneracy_5", check_degeneracy},
        {"hormander_eq_52", check_hormander_eq},
        {"toeplitz_61", check_toeplitz},
        {"quantization", check_quantization},
        {"det_identity_7", check_det_identity},
        {"theorem_71", check_theorem_71},
        {"extension_ratio", check_extension_ratio},
        {"log_norm_psh", check_log_norm_psh},
        {"hessian_quotient", check_hessian_quotient},
        {"geodesic_identities", check_geodesic_identities},
        {"fd_agreement", check_fd_agreement},
        {"frame_invariance", check_frame_invariance},
        {"fock_oracle", check_fock_oracle},
    };
    return registry;
}

}  // namespace dimlab::detail

namespace dimlab {

double default_tolerance(const std::string& name) {
    static const std::map<std::string, double> table{
        {"psh", 1e-7},
        {"kernel_psh", 1e-4},
        {"nakano", 1e-4},
        {"griffiths", 1e-4},
        {"griffiths.dominates_nakano", 1e-10},
        {"dual_identity", 1e-7},
        {"subbundle_24", 1e-6},
        {"hormander_31", 1e-4},
        {"normal_25", 1e-6},
        {"degeneracy_5.curvature_norm", 1e-5},
        {"degeneracy_5.dbar_v_residual", 1e-6},
        {"hormander_eq_52.equality", 1e-6},
        {"hormander_eq_52.orth", 1e-8},
        {"toeplitz_61", 1e-5},
        {"quantization.margin", 1e-5},
        {"quantization.flat", 1e-5},
        {"det_identity_7", 1e-6},
        {"theorem_71", 1e-4},
        {"extension_ratio", 1e-8},
        {"extension_ratio.monotone", 1e-9},
        {"log_norm_psh", 1e-5},
        {"hessian_quotient", 1e-8},
        {"geodesic_identities.c_equals_d11", 1e-8},
        {"geodesic_identities.real_path", 1e-8},
        {"fd_agreement", 1e-6},
        {"fd_agreement.curvature", 1e-5},
        {"frame_invariance", 1e-9},
        {"fock_oracle.gram", 1e-8},
        {"fock_oracle.kernel", 1e-6},
        {"fock_oracle.curvature", 1e-3},
    };
    if (auto it = table.find(name); it != table.end()) return it->second;
    const auto dot = name.find('.');
    if (dot != std::string::npos) {
        if (auto it = table.find(name.substr(0, dot)); it != table.end()) return it->second;
    }
    return 0.0;
}

}  // namespace dimlab
