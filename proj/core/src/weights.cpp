#include "dimlab/weights.hpp"

#include <cmath>
#include <limits>

#include "dimlab/finite_difference.hpp"

namespace dimlab {

namespace {

void require_point(const WeightFamily& phi, const BasePoint& t) {
    if (t.size() != phi.base_dim()) {
        throw PreconditionError("weight " + phi.family_id() + ": base point has dimension " +
                                std::to_string(t.size()) + ", expected " +
                                std::to_string(phi.base_dim()));
    }
}

}  // namespace

DerivativeSet wirtinger_fd(const WeightFamily& phi, const BasePoint& t, cplx z, const FdOptions& fd) {
    require_point(phi, t);
    if (!(fd.step > 0.0)) throw PreconditionError("wirtinger: step must be positive");
    const int m = phi.base_dim();
    CVec w(m + 1);
    w.head(m) = t;
    w(m) = z;
    const RVec x = to_real(w);

    RVec steps = RVec::Constant(x.size(), fd.step);
    // Scale the z-step with |z| so large chart coordinates keep relative resolution.
    steps(2 * m) = steps(2 * m + 1) = fd.step * (1.0 + std::abs(z));

    const std::function<double(const RVec&)> f = [&](const RVec& y) {
        const CVec p = to_complex(y);
        const BasePoint tp = p.head(m);
        if (!phi.in_domain(tp, p(m))) {
            throw DomainError("wirtinger: stencil point leaves the domain of " + phi.family_id());
        }
        return phi.value(tp, p(m));
    };
    const auto jet = fd_jet<double>(f, x, steps, fd.richardson);

    DerivativeSet d;
    d.value = jet.value;
    d.grad_t.resize(m);
    d.hess_tt.resize(m, m);
    d.mixed_tzbar.resize(m);
    d.mixed_tz.resize(m);
    for (int j = 0; j < m; ++j) {
        d.grad_t(j) = wirtinger_d(jet, j);
        for (int k = 0; k < m; ++k) d.hess_tt(j, k) = wirtinger_d_dbar(jet, j, k);
        d.mixed_tzbar(j) = wirtinger_d_dbar(jet, j, m);
        d.mixed_tz(j) = wirtinger_d_d(jet, j, m);
    }
    d.hess_tt = 0.5 * (d.hess_tt + d.hess_tt.adjoint()).eval();
    d.grad_z = wirtinger_d(jet, m);
    d.hess_zz = wirtinger_d_dbar(jet, m, m).real();
    return d;
}

DerivativeSet wirtinger(const WeightFamily& phi, const BasePoint& t, cplx z, DerivativeMode mode,
                        const FdOptions& fd) {
    require_point(phi, t);
    if (mode == DerivativeMode::analytic && phi.has_analytic()) {
        if (auto d = phi.analytic(t, z)) return *d;
    }
    return wirtinger_fd(phi, t, z, fd);
}

CMat joint_hessian(const DerivativeSet& d) {
    const auto m = d.grad_t.size();
    CMat H(m + 1, m + 1);
    H.topLeftCorner(m, m) = d.hess_tt;
    H.topRightCorner(m, 1) = d.mixed_tzbar;
    H.bottomLeftCorner(1, m) = d.mixed_tzbar.adjoint();
    H(m, m) = d.hess_zz;
    return H;
}

CMat d_matrix(const DerivativeSet& d) {
    if (!(d.hess_zz > 0.0)) {
        throw FiberDegeneracyError("d_matrix: fiber Hessian phi_zzbar = " + std::to_string(d.hess_zz) +
                                   " is not positive");
    }
    CMat D = d.hess_tt - d.mixed_tzbar * d.mixed_tzbar.adjoint() / d.hess_zz;
    return 0.5 * (D + D.adjoint());
}

CMat d_matrix(const WeightFamily& phi, const BasePoint& t, cplx z, DerivativeMode mode,
              const FdOptions& fd) {
    return d_matrix(wirtinger(phi, t, z, mode, fd));
}

double hessian_quotient_check(const WeightFamily& phi, cplx t, cplx z, DerivativeMode mode,
                              const FdOptions& fd) {
    if (phi.base_dim() != 1) throw PreconditionError("hessian_quotient_check: needs base dimension 1");
    const auto d = wirtinger(phi, base_point(t), z, mode, fd);
    const CMat D = d_matrix(d);
    const CMat H = joint_hessian(d);
    const double det = (H(0, 0) * H(1, 1) - H(0, 1) * H(1, 0)).real();
    return std::abs(D(0, 0).real() - det / d.hess_zz);
}

double psh_check(const WeightFamily& phi, const std::vector<WeightPoint>& points,
                 DerivativeMode mode, const FdOptions& fd) {
    if (points.empty()) throw PreconditionError("psh_check: no points");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : points) {
        const CMat H = joint_hessian(wirtinger(phi, p.t, p.z, mode, fd));
        Eigen::SelfAdjointEigenSolver<CMat> es(H, Eigen::EigenvaluesOnly);
        best = std::min(best, es.eigenvalues()(0));
    }
    return best;
}

double fd_analytic_discrepancy(const WeightFamily& phi, const BasePoint& t, cplx z, const FdOptions& fd) {
    const auto a = phi.analytic(t, z);
    if (!a) throw PreconditionError("fd_analytic_discrepancy: " + phi.family_id() + " has no analytic table");
    const auto f = wirtinger_fd(phi, t, z, fd);
    double err = std::abs(a->value - f.value);
    err = std::max(err, (a->grad_t - f.grad_t).cwiseAbs().maxCoeff());
    err = std::max(err, (a->hess_tt - f.hess_tt).cwiseAbs().maxCoeff());
    err = std::max(err, std::abs(a->grad_z - f.grad_z));
    err = std::max(err, std::abs(a->hess_zz - f.hess_zz));
    err = std::max(err, (a->mixed_tzbar - f.mixed_tzbar).cwiseAbs().maxCoeff());
    err = std::max(err, (a->mixed_tz - f.mixed_tz).cwiseAbs().maxCoeff());
    return err;
}

}  // namespace dimlab
