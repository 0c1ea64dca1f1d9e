#include "dimlab/kahlerpath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dimlab/linalg.hpp"

namespace dimlab {

namespace {

template <class F>
auto central_x(const F& f, double x, double h) {
    auto d = [&](double s) { return (f(x + s) - f(x - s)) / (2.0 * s); };
    return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

}  // namespace

void validate_path(const PathSpec& path) {
    if (!path.family) throw PreconditionError("path: null weight family");
    if (path.family->base_dim() != 1) throw PreconditionError("path: base must be one-dimensional");
    if (!std::isfinite(path.scale)) throw PreconditionError("path: scale must be finite");
    require_rule_matches(path.basis, path.rule);
    const BasePoint t0 = base_point(0.0);
    for (const cplx& z : path.rule.nodes()) {
        const auto d = wirtinger(*path.family, t0, z);
        if (!(d.hess_zz > 0.0)) throw FiberDegeneracyError("path: base weight is not fiber-strict at a node");
    }
}

WeightPtr path_weight(const PathSpec& path) { return std::make_shared<PathWeight>(path.family, path.scale, true); }

WeightPtr path_perturbation(const PathSpec& path) {
    return std::make_shared<PathWeight>(path.family, path.scale, false);
}

double geodesic_curvature(const PathSpec& path, cplx t, cplx z, DerivativeMode mode, const FdOptions& fd) {
    const BasePoint tp = base_point(t);
    const auto psi = wirtinger(*path_perturbation(path), tp, z, mode, fd);
    const auto phi = wirtinger(*path_weight(path), tp, z, mode, fd);
    if (!(phi.hess_zz > 0.0)) throw FiberDegeneracyError("geodesic_curvature: phi_zzbar is not positive");
    return psi.hess_tt(0, 0).real() - std::norm(psi.mixed_tzbar(0)) / phi.hess_zz;
}

std::vector<double> geodesic_curvature_samples(const PathSpec& path, cplx t, DerivativeMode mode) {
    std::vector<double> c;
    c.reserve(path.rule.size());
    for (const cplx& z : path.rule.nodes()) c.push_back(geodesic_curvature(path, t, z, mode));
    return c;
}

RealPathIdentity real_path_identity(const PathSpec& path, double x, cplx z, const FdOptions& fd) {
    const auto psi = path_perturbation(path);
    const auto phi = path_weight(path);
    const double probe = psi->value(base_point(cplx(x, 0.25)), z) - psi->value(base_point(cplx(x, 0.0)), z);
    if (std::abs(probe) > 1e-12 * (1.0 + std::abs(psi->value(base_point(x), z)))) {
        throw PreconditionError("real_path_identity: the path depends on Im t");
    }
    auto table = [&](double s) { return wirtinger(*psi, base_point(cplx(s, 0.0)), z); };
    const double psi_ddot = central_x([&](double s) { return 2.0 * table(s).grad_t(0).real(); }, x, fd.step);
    const cplx dzbar_psi_dot = central_x([&](double s) { return std::conj(table(s).grad_z); }, x, fd.step);
    const auto d = wirtinger(*phi, base_point(x), z);
    if (!(d.hess_zz > 0.0)) throw FiberDegeneracyError("real_path_identity: phi_zzbar is not positive");
    RealPathIdentity r;
    r.four_c = 4.0 * geodesic_curvature(path, x, z, DerivativeMode::analytic, fd);
    r.rhs = psi_ddot - std::norm(dzbar_psi_dot) / d.hess_zz;
    return r;
}

double toeplitz_bound_margin(const PathSpec& path, cplx t, DerivativeMode mode) {
    validate_path(path);
    const auto phi = path_weight(path);
    const BasePoint tp = base_point(t);
    const L2GramField field(path.basis, phi, path.rule, GramDerivativeMode::analytic_weight, mode);
    const auto curv = chern_curvature(field, tp);
    const CMat lhs = curv.h * curv.at(0, 0);
    const CMat rhs = toeplitz(path.basis, *phi, tp, path.rule, geodesic_curvature_samples(path, t, mode));
    return min_generalized_eigenvalue(hermitian_part(lhs - rhs), curv.h);
}

std::vector<QuantizationRow> quantization_report(const std::function<PathSpec(int)>& path_for_degree,
                                                 const std::vector<cplx>& t_grid, const std::vector<int>& degrees,
                                                 DerivativeMode mode) {
    if (t_grid.empty()) throw PreconditionError("quantization_report: empty t-grid");
    std::vector<QuantizationRow> rows;
    int previous = 0;
    for (int l : degrees) {
        if (l <= previous) throw PreconditionError("quantization_report: degrees must be increasing");
        previous = l;
        const PathSpec path = path_for_degree(l);
        validate_path(path);
        if (!path.rule.is_p1()) throw PreconditionError("quantization_report: needs a ℙ¹ fiber");
        const auto phi = path_weight(path);
        const L2GramField field(path.basis, phi, path.rule, GramDerivativeMode::analytic_weight, mode);
        QuantizationRow row;
        row.degree = l;
        row.nakano_min_eig = std::numeric_limits<double>::infinity();
        row.margin = std::numeric_limits<double>::infinity();
        row.min_c = std::numeric_limits<double>::infinity();
        for (const cplx& t : t_grid) {
            row.nakano_min_eig = std::min(row.nakano_min_eig, nakano_min_eig(chern_curvature(field, base_point(t))));
            row.margin = std::min(row.margin, toeplitz_bound_margin(path, t, mode));
            const auto c = geodesic_curvature_samples(path, t, mode);
            row.min_c = std::min(row.min_c, *std::min_element(c.begin(), c.end()));
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace dimlab
