#include "dimlab/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace dimlab {

namespace {

RVec equilibration(const CMat& h) {
    RVec s(h.rows());
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        const double d = h(i, i).real();
        if (!(d > 0.0)) throw IllConditionedError("matrix has a non-positive diagonal entry");
        s(i) = 1.0 / std::sqrt(d);
    }
    return s;
}

}  // namespace

CMat hermitian_part(const CMat& a) { return 0.5 * (a + a.adjoint()); }

double hermitian_defect(const CMat& a, double floor) {
    if (a.size() == 0) return 0.0;
    const double scale = std::max(a.cwiseAbs().maxCoeff(), floor);
    return (a - a.adjoint()).cwiseAbs().maxCoeff() / scale;
}

CMat solve_hpd(const CMat& h, const CMat& b) {
    const RVec s = equilibration(h);
    const CMat e = s.asDiagonal() * h * s.asDiagonal();
    Eigen::LLT<CMat> llt(e);
    if (llt.info() != Eigen::Success) throw IllConditionedError("matrix is not positive definite");
    const CMat y = llt.solve(s.asDiagonal() * b);
    return s.asDiagonal() * y;
}

CVec solve_hpd(const CMat& h, const CVec& b) {
    const CMat x = solve_hpd(h, CMat(b));
    return x.col(0);
}

CVec solve_psd(const CMat& k, const CVec& b, double rel_cut) {
    RVec s(k.rows());
    for (Eigen::Index i = 0; i < k.rows(); ++i) {
        const double d = k(i, i).real();
        s(i) = d > 0.0 ? 1.0 / std::sqrt(d) : 1.0;
    }
    const CMat e = s.asDiagonal() * k * s.asDiagonal();
    Eigen::SelfAdjointEigenSolver<CMat> es(e);
    const RVec& lam = es.eigenvalues();
    const double cut = rel_cut * lam.cwiseAbs().maxCoeff();
    const CVec rhs = es.eigenvectors().adjoint() * (s.asDiagonal() * b);
    CVec y = CVec::Zero(rhs.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (lam(i) > cut) y(i) = rhs(i) / lam(i);
    }
    return s.asDiagonal() * (es.eigenvectors() * y);
}

double min_eigenvalue(const CMat& a) {
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(a), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

double min_generalized_eigenvalue(const CMat& a, const CMat& b) {
    // Reduce with B^{-1/2} after equilibration; keeps the result frame-invariant.
    const RVec s = equilibration(b);
    const CMat be = s.asDiagonal() * b * s.asDiagonal();
    const CMat ae = s.asDiagonal() * hermitian_part(a) * s.asDiagonal();
    Eigen::GeneralizedSelfAdjointEigenSolver<CMat> es(ae, hermitian_part(be), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw IllConditionedError("generalized eigenproblem failed");
    return es.eigenvalues()(0);
}

CMat hpd_sqrt(const CMat& h) {
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(h));
    if (es.eigenvalues()(0) <= 0.0) throw IllConditionedError("hpd_sqrt: matrix is not positive definite");
    return es.operatorSqrt();
}

CMat hpd_inv_sqrt(const CMat& h) {
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(h));
    if (es.eigenvalues()(0) <= 0.0) throw IllConditionedError("hpd_inv_sqrt: matrix is not positive definite");
    return es.operatorInverseSqrt();
}

double spectral_norm(const CMat& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMat> svd(a);
    return svd.singularValues()(0);
}

}  // namespace dimlab
