#include "dimlab/bergman.hpp"

#include <cmath>
#include <limits>

#include "dimlab/finite_difference.hpp"
#include "dimlab/linalg.hpp"

namespace dimlab {

namespace {

cplx ipow(cplx z, int n) {
    cplx r{1.0, 0.0};
    for (int i = 0; i < n; ++i) r *= z;
    return r;
}

CVec basis_row(const Basis& basis, cplx z) {
    CVec e(basis.dim());
    cplx p{1.0, 0.0};
    for (int a = 0; a < basis.dim(); ++a) {
        e(a) = p;
        p *= z;
    }
    return e;
}

}  // namespace

Basis Basis::plane(int cutoff) {
    if (cutoff < 0) throw PreconditionError("Basis::plane: cutoff degree must be non-negative");
    return {Kind::plane_monomials, cutoff};
}

Basis Basis::p1(int degree) {
    if (degree < 2) throw PreconditionError("Basis::p1: line-bundle degree must be at least 2");
    return {Kind::p1_sections, degree};
}

cplx Basis::eval(int alpha, cplx z) const {
    if (alpha < 0 || alpha >= dim()) throw PreconditionError("Basis::eval: index out of range");
    return ipow(z, alpha);
}

cplx Basis::eval_dz(int alpha, cplx z) const {
    if (alpha < 0 || alpha >= dim()) throw PreconditionError("Basis::eval_dz: index out of range");
    return alpha == 0 ? cplx{0.0, 0.0} : static_cast<double>(alpha) * ipow(z, alpha - 1);
}

void require_rule_matches(const Basis& basis, const QuadratureRule& rule) {
    if (basis.is_p1() != rule.is_p1()) {
        throw PreconditionError(basis.is_p1() ? "ℙ¹ sections need a ℙ¹ rule"
                                              : "plane monomials need a plane rule");
    }
}

CMat basis_samples(const Basis& basis, const QuadratureRule& rule) {
    const auto n = static_cast<Eigen::Index>(rule.size());
    CMat B(n, basis.dim());
    const auto& z = rule.nodes();
    for (Eigen::Index i = 0; i < n; ++i) B.row(i) = basis_row(basis, z[static_cast<std::size_t>(i)]).transpose();
    return B;
}

RVec weighted_measure(const WeightFamily& phi, const BasePoint& t, const QuadratureRule& rule) {
    const auto n = static_cast<Eigen::Index>(rule.size());
    RVec mu(n);
    const auto& z = rule.nodes();
    const auto& w = rule.weights();
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const double v = phi.value(t, z[ui]);
        mu(i) = w[ui] * std::exp(-v);
        if (!std::isfinite(mu(i))) {
            throw DomainError("weight " + phi.family_id() + " is not finite at a quadrature node");
        }
    }
    return mu;
}

CMat gram_from_samples(const CMat& samples, const RVec& measure) {
    if (samples.rows() != measure.size()) throw PreconditionError("gram_from_samples: size mismatch");
    const CMat WB = measure.asDiagonal() * samples;
    CMat h = samples.adjoint() * WB;
    return hermitian_part(h);
}

double equilibrated_condition(const CMat& h) {
    const RVec d = h.diagonal().real();
    if ((d.array() <= 0.0).any()) return std::numeric_limits<double>::infinity();
    const RVec s = d.cwiseSqrt().cwiseInverse();
    const CMat e = s.asDiagonal() * h * s.asDiagonal();
    Eigen::SelfAdjointEigenSolver<CMat> es(e, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues()(0);
    const double hi = es.eigenvalues()(e.rows() - 1);
    if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

void check_gram(const CMat& h, double max_condition) {
    if (!h.allFinite()) throw IllConditionedError("Gram matrix has non-finite entries");
    const double scale = h.cwiseAbs().maxCoeff();
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw NonHermitianError("Gram matrix is not Hermitian");
    }
    const double cond = equilibrated_condition(h);
    if (!(cond <= max_condition)) {
        throw IllConditionedError("Gram matrix is singular or ill-conditioned (equilibrated condition " +
                                  std::to_string(cond) + ")");
    }
}

CMat gram(const Basis& basis, const WeightFamily& phi, const BasePoint& t, const QuadratureRule& rule) {
    require_rule_matches(basis, rule);
    const CMat h = gram_from_samples(basis_samples(basis, rule), weighted_measure(phi, t, rule));
    check_gram(h);
    return h;
}

cplx kernel_eval(const Basis& basis, const CMat& h, cplx z, cplx w) {
    check_gram(h);
    const CVec ez = basis_row(basis, z);
    const CVec ew = basis_row(basis, w).conjugate();
    return ez.transpose() * solve_hpd(h, ew);
}

double log_kernel_psh_report(const WeightFamily& phi, const Basis& basis, const QuadratureRule& rule,
                             const std::vector<KernelPoint>& grid, const FdOptions& fd) {
    if (grid.empty()) throw PreconditionError("log_kernel_psh_report: empty grid");
    require_rule_matches(basis, rule);
    const int m = phi.base_dim();
    const CMat B = basis_samples(basis, rule);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : grid) {
        CVec w(m + 1);
        w.head(m) = p.t;
        w(m) = p.z;
        RVec steps = RVec::Constant(2 * m + 2, fd.step);
        steps(2 * m) = steps(2 * m + 1) = fd.step * (1.0 + std::abs(p.z));
        const std::function<double(const RVec&)> f = [&](const RVec& x) {
            const CVec q = to_complex(x);
            const BasePoint tq = q.head(m);
            const CMat h = gram_from_samples(B, weighted_measure(phi, tq, rule));
            const double k = kernel_eval(basis, h, q(m), q(m)).real();
            if (!(k > 0.0)) throw DomainError("log_kernel_psh_report: kernel is not positive");
            return std::log(k);
        };
        const auto jet = fd_jet<double>(f, to_real(w), steps, fd.richardson);
        CMat H(m + 1, m + 1);
        for (int a = 0; a <= m; ++a) {
            for (int b = 0; b <= m; ++b) H(a, b) = wirtinger_d_dbar(jet, a, b);
        }
        best = std::min(best, min_eigenvalue(hermitian_part(H)));
    }
    return best;
}

CVec project_holomorphic(const Basis& basis, const CMat& h, const WeightFamily& phi, const BasePoint& t,
                         const QuadratureRule& rule, const std::vector<cplx>& m_samples) {
    require_rule_matches(basis, rule);
    if (m_samples.size() != rule.size()) throw PreconditionError("project_holomorphic: sample count mismatch");
    const CMat B = basis_samples(basis, rule);
    const RVec mu = weighted_measure(phi, t, rule);
    const Eigen::Map<const CVec> m(m_samples.data(), static_cast<Eigen::Index>(m_samples.size()));
    const CVec b = B.adjoint() * (mu.asDiagonal() * m);
    return solve_hpd(h, b);
}

CMat second_fundamental_form(const Basis& basis, const WeightFamily& phi, const BasePoint& t,
                             const QuadratureRule& rule, const CMat& U, DerivativeMode mode,
                             const FdOptions& fd, const CMat* ambient_samples) {
    require_rule_matches(basis, rule);
    const int m = phi.base_dim();
    if (U.rows() != basis.dim() || U.cols() != m) {
        throw PreconditionError("second_fundamental_form: tuple must be d × m");
    }
    const CMat B = basis_samples(basis, rule);
    const RVec mu = weighted_measure(phi, t, rule);
    const CMat h = gram_from_samples(B, mu);
    check_gram(h);
    const auto n = static_cast<Eigen::Index>(rule.size());
    // A(:, j) = φ_j · u_j at the nodes.
    CMat A(n, m);
    const CMat BU = B * U;
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto d = wirtinger(phi, t, rule.nodes()[static_cast<std::size_t>(i)], mode, fd);
        for (int j = 0; j < m; ++j) A(i, j) = d.grad_t(j) * BU(i, j);
    }
    const CMat WA = mu.asDiagonal() * A;
    CMat full = WA.transpose() * A.conjugate();  // ⟨a_j, a_k⟩ at (j, k)
    if (ambient_samples) {
        if (ambient_samples->rows() != n) throw PreconditionError("second_fundamental_form: ambient size mismatch");
        const CMat hF = gram_from_samples(*ambient_samples, mu);
        check_gram(hF);
        const CMat cF = solve_hpd(hF, CMat(ambient_samples->adjoint() * WA));
        full = (cF.adjoint() * hF * cF).transpose();
    }
    const CMat b = B.adjoint() * WA;                    // column j: moments of a_j
    const CMat c = solve_hpd(h, b);
    const CMat proj = (c.adjoint() * h * c).transpose();  // c_k^H h c_j at (j, k)
    return hermitian_part(CMat(full - proj));
}

CMat toeplitz(const Basis& basis, const WeightFamily& phi, const BasePoint& t, const QuadratureRule& rule,
              const std::vector<double>& chi_samples) {
    require_rule_matches(basis, rule);
    if (chi_samples.size() != rule.size()) throw PreconditionError("toeplitz: sample count mismatch");
    RVec mu = weighted_measure(phi, t, rule);
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
        const double c = chi_samples[static_cast<std::size_t>(i)];
        if (!std::isfinite(c)) throw DomainError("toeplitz: symbol is not finite at a node");
        mu(i) *= c;
    }
    return gram_from_samples(basis_samples(basis, rule), mu);
}

// --------------------------------------------------------- Hörmander witness

HormanderWitness hormander_equality_witness(int degree, const WeightFamily& phi, const BasePoint& t,
                                            const std::vector<cplx>& gamma, const std::vector<cplx>& gamma_dz,
                                            const QuadratureRule& rule, DerivativeMode mode) {
    if (!rule.is_p1()) throw PreconditionError("hormander_equality_witness: needs a ℙ¹ rule");
    if (gamma.size() != rule.size() || gamma_dz.size() != rule.size()) {
        throw PreconditionError("hormander_equality_witness: sample count mismatch");
    }
    const Basis basis = Basis::p1(degree);
    const RVec mu = weighted_measure(phi, t, rule);
    const auto n = rule.size();
    std::vector<double> mu2(n);
    std::vector<double> f2(n);
    CVec mu_vals(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto d = wirtinger(phi, t, rule.nodes()[i], mode);
        if (!(d.hess_zz > 0.0)) {
            throw FiberDegeneracyError("hormander_equality_witness: phi_zzbar is not positive at a node");
        }
        const cplx m = gamma_dz[i] - gamma[i] * d.grad_z;
        const auto ii = static_cast<Eigen::Index>(i);
        mu_vals(ii) = m;
        mu2[i] = std::norm(m) * mu(ii);
        f2[i] = std::norm(gamma[i]) * d.hess_zz * mu(ii);
    }
    HormanderWitness out;
    out.norm_mu_sq = pairwise_sum(std::span<const double>(mu2));
    out.norm_f_sq = pairwise_sum(std::span<const double>(f2));
    const CVec pairings = basis_samples(basis, rule).adjoint() * (mu.asDiagonal() * mu_vals);
    out.orth_residual = pairings.size() ? pairings.cwiseAbs().maxCoeff() : 0.0;
    return out;
}

MinimalSolution minimal_dbar_solution(int degree, const WeightFamily& phi, const BasePoint& t,
                                      const std::vector<cplx>& gamma, const QuadratureRule& rule,
                                      int max_antidegree, DerivativeMode mode) {
    if (!rule.is_p1()) throw PreconditionError("minimal_dbar_solution: needs a ℙ¹ rule");
    if (gamma.size() != rule.size()) throw PreconditionError("minimal_dbar_solution: sample count mismatch");
    if (max_antidegree < 0) throw PreconditionError("minimal_dbar_solution: max_antidegree must be >= 0");

    struct Index {
        int a, b;
    };
    std::vector<Index> space;
    for (int b = 0; b <= max_antidegree; ++b) {
        for (int a = 0; a <= degree + b; ++a) space.push_back({a, b});
    }
    const auto n = static_cast<Eigen::Index>(rule.size());
    const auto k = static_cast<Eigen::Index>(space.size());
    const RVec mu = weighted_measure(phi, t, rule);

    CMat dv(n, k);    // ∂^φ v_a at the nodes
    CMat v(n, k);     // v_a at the nodes
    CVec f(n);        // γ·φ_{zz̄}
    std::vector<double> f2(rule.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        const cplx z = rule.nodes()[static_cast<std::size_t>(i)];
        const auto d = wirtinger(phi, t, z, mode);
        if (!(d.hess_zz > 0.0)) throw FiberDegeneracyError("minimal_dbar_solution: phi_zzbar is not positive");
        const double u = std::norm(z);
        const cplx zb = std::conj(z);
        for (Eigen::Index c = 0; c < k; ++c) {
            const auto [a, b] = space[static_cast<std::size_t>(c)];
            const double s = std::pow(1.0 + u, -b);
            const cplx val = ipow(z, a) * ipow(zb, b) * s;
            const cplx dz = (a > 0 ? static_cast<double>(a) * ipow(z, a - 1) * ipow(zb, b) * s : cplx{}) -
                            static_cast<double>(b) * ipow(z, a) * ipow(zb, b + 1) * s / (1.0 + u);
            v(i, c) = val;
            dv(i, c) = dz - val * d.grad_z;
        }
        const cplx g = gamma[static_cast<std::size_t>(i)];
        f(i) = g * d.hess_zz;
        f2[static_cast<std::size_t>(i)] = std::norm(g) * d.hess_zz * mu(i);
    }
    const CMat K = hermitian_part(CMat(dv.adjoint() * (mu.asDiagonal() * dv)));
    const CVec load = v.adjoint() * (mu.asDiagonal() * f);
    const CVec c = solve_psd(K, load);
    MinimalSolution out;
    out.norm_mu_sq = load.dot(c).real();
    out.norm_f_sq = pairwise_sum(std::span<const double>(f2));
    out.space_dim = static_cast<int>(k);
    return out;
}

// ---------------------------------------------------- minimal extension ratio

ExtensionResult minimal_extension_ratio(const WeightFamily& phi, const Basis& basis, const CVec& u,
                                        int t_poly_cutoff, const QuadratureRule& t_rule,
                                        const QuadratureRule& fiber_rule) {
    if (phi.base_dim() != 1) throw PreconditionError("minimal_extension_ratio: needs base dimension 1");
    if (t_poly_cutoff < 0) throw PreconditionError("minimal_extension_ratio: cutoff must be >= 0");
    const auto* disk = std::get_if<DiskDomain>(&t_rule.domain());
    if (!disk) throw PreconditionError("minimal_extension_ratio: t_rule must be a disk rule");
    const int d = basis.dim();
    if (u.size() != d) throw PreconditionError("minimal_extension_ratio: section has wrong dimension");

    const CMat B = basis_samples(basis, fiber_rule);
    require_rule_matches(basis, fiber_rule);
    const CMat h0 = gram_from_samples(B, weighted_measure(phi, base_point(0.0), fiber_rule));
    check_gram(h0);
    const double norm0 = u.dot(h0 * u).real();
    if (!(norm0 > 0.0)) throw PreconditionError("minimal_extension_ratio: section has zero norm");
    const CVec v0 = u / std::sqrt(norm0);

    const int P = t_poly_cutoff + 1;
    CMat M = CMat::Zero(P * d, P * d);
    for (std::size_t i = 0; i < t_rule.size(); ++i) {
        const cplx t = t_rule.nodes()[i];
        const CMat h = gram_from_samples(B, weighted_measure(phi, base_point(t), fiber_rule));
        std::vector<cplx> tp(static_cast<std::size_t>(P));
        tp[0] = 1.0;
        for (int p = 1; p < P; ++p) tp[static_cast<std::size_t>(p)] = tp[static_cast<std::size_t>(p - 1)] * t;
        for (int q = 0; q < P; ++q) {
            for (int p = 0; p < P; ++p) {
                const cplx c = t_rule.weights()[i] * tp[static_cast<std::size_t>(p)] *
                               std::conj(tp[static_cast<std::size_t>(q)]);
                M.block(q * d, p * d, d, d) += c * h;
            }
        }
    }
    M = hermitian_part(M);
    // Minimize over v_1..v_P with v_0 fixed: Schur complement of the free block.
    double ratio = v0.dot(M.topLeftCorner(d, d) * v0).real();
    if (P > 1) {
        const CMat Mrr = M.bottomRightCorner((P - 1) * d, (P - 1) * d);
        const CVec r = M.bottomLeftCorner((P - 1) * d, d) * v0;
        ratio -= r.dot(solve_hpd(Mrr, r)).real();
    }
    return {ratio, t_poly_cutoff};
}

}  // namespace dimlab
