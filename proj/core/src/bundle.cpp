#include "dimlab/bundle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "dimlab/finite_difference.hpp"
#include "dimlab/linalg.hpp"
#include "dimlab/rng.hpp"

namespace dimlab {

namespace {

constexpr double kPi = std::numbers::pi;

CMat weighted_products(const CMat& B, const CVec& c) {
    const CMat WB = c.asDiagonal() * B;
    return B.adjoint() * WB;
}


RVec fiber_step(const BasePoint& t, const FdOptions& fd) {
    return RVec::Constant(2 * t.size(), fd.step);
}

}  // namespace

// ------------------------------------------------------------------ jets

GramJet fd_gram_jet(const std::function<CMat(const BasePoint&)>& h, const BasePoint& t, const FdOptions& fd) {
    const int m = static_cast<int>(t.size());
    const std::function<CMat(const RVec&)> f = [&](const RVec& x) { return h(to_complex(x)); };
    const auto jet = fd_jet<CMat>(f, to_real(t), fiber_step(t, fd), fd.richardson);
    GramJet out;
    out.h = jet.value;
    out.dh.resize(static_cast<std::size_t>(m));
    out.ddh.assign(static_cast<std::size_t>(m), std::vector<CMat>(static_cast<std::size_t>(m)));
    for (int j = 0; j < m; ++j) {
        out.dh[static_cast<std::size_t>(j)] = wirtinger_d(jet, j);
        for (int k = 0; k < m; ++k) {
            out.ddh[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = wirtinger_d_dbar(jet, j, k);
        }
    }
    return out;
}

GramJet GramField::jet(const BasePoint& t) const {
    if (t.size() != base_dim()) throw PreconditionError("GramField::jet: base point has wrong dimension");
    return fd_gram_jet([this](const BasePoint& s) { return gram(s); }, t, fd_);
}

// ------------------------------------------------------------- L2GramField

L2GramField::L2GramField(Basis basis, WeightPtr phi, QuadratureRule rule, GramDerivativeMode mode,
                         DerivativeMode weight_mode, FdOptions fd)
    : basis_(basis), phi_(std::move(phi)), rule_(std::move(rule)), mode_(mode), weight_mode_(weight_mode) {
    if (!phi_) throw PreconditionError("L2GramField: null weight");
    require_rule_matches(*basis_, rule_);
    samples_ = basis_samples(*basis_, rule_);
    fd_ = fd;
}

L2GramField::L2GramField(CMat samples, WeightPtr phi, QuadratureRule rule, GramDerivativeMode mode,
                         DerivativeMode weight_mode, FdOptions fd)
    : phi_(std::move(phi)),
      rule_(std::move(rule)),
      mode_(mode),
      weight_mode_(weight_mode),
      samples_(std::move(samples)) {
    if (!phi_) throw PreconditionError("L2GramField: null weight");
    if (samples_.rows() != static_cast<Eigen::Index>(rule_.size())) {
        throw PreconditionError("L2GramField: samples must have one row per node");
    }
    fd_ = fd;
}

const Basis& L2GramField::basis() const {
    if (!basis_) throw PreconditionError("L2GramField: field was built from raw samples");
    return *basis_;
}

CMat L2GramField::gram(const BasePoint& t) const {
    const CMat h = gram_from_samples(samples_, weighted_measure(*phi_, t, rule_));
    check_gram(h);
    return h;
}

GramJet L2GramField::jet(const BasePoint& t) const {
    if (t.size() != base_dim()) throw PreconditionError("L2GramField::jet: base point has wrong dimension");
    if (mode_ == GramDerivativeMode::finite_difference) return GramField::jet(t);
    const int m = base_dim();
    const auto n = static_cast<Eigen::Index>(rule_.size());
    const RVec mu = weighted_measure(*phi_, t, rule_);
    std::vector<CVec> first(static_cast<std::size_t>(m), CVec(n));
    std::vector<std::vector<CVec>> second(static_cast<std::size_t>(m),
                                          std::vector<CVec>(static_cast<std::size_t>(m), CVec(n)));
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto d = wirtinger(*phi_, t, rule_.nodes()[static_cast<std::size_t>(i)], weight_mode_, fd_);
        for (int j = 0; j < m; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            first[uj](i) = -d.grad_t(j) * mu(i);
            for (int k = 0; k < m; ++k) {
                second[uj][static_cast<std::size_t>(k)](i) =
                    (d.grad_t(j) * std::conj(d.grad_t(k)) - d.hess_tt(j, k)) * mu(i);
            }
        }
    }
    GramJet out;
    out.h = gram_from_samples(samples_, mu);
    check_gram(out.h);
    out.dh.resize(static_cast<std::size_t>(m));
    out.ddh.assign(static_cast<std::size_t>(m), std::vector<CMat>(static_cast<std::size_t>(m)));
    for (int j = 0; j < m; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        out.dh[uj] = weighted_products(samples_, first[uj]);
        for (int k = 0; k < m; ++k) {
            out.ddh[uj][static_cast<std::size_t>(k)] = weighted_products(samples_, second[uj][static_cast<std::size_t>(k)]);
        }
    }
    return out;
}

// -------------------------------------------------------- other fields

CallableGramField::CallableGramField(int base_dim, int dim, std::function<CMat(const BasePoint&)> fn, FdOptions fd)
    : base_dim_(base_dim), dim_(dim), fn_(std::move(fn)) {
    if (!fn_) throw PreconditionError("CallableGramField: empty callable");
    fd_ = fd;
}

FrameChangedField::FrameChangedField(GramFieldPtr base, CMat A) : base_(std::move(base)), A_(std::move(A)) {
    if (!base_) throw PreconditionError("FrameChangedField: null base");
    if (A_.rows() != base_->dim() || A_.cols() != base_->dim()) {
        throw PreconditionError("FrameChangedField: frame change must be d × d");
    }
    if (std::abs(A_.determinant()) == 0.0) throw PreconditionError("FrameChangedField: frame change is singular");
    fd_ = base_->fd();
}

CMat FrameChangedField::gram(const BasePoint& t) const { return hermitian_part(A_.adjoint() * base_->gram(t) * A_); }

GramJet FrameChangedField::jet(const BasePoint& t) const {
    GramJet j = base_->jet(t);
    auto conj_by = [&](const CMat& x) { return CMat(A_.adjoint() * x * A_); };
    j.h = hermitian_part(conj_by(j.h));
    for (auto& d : j.dh) d = conj_by(d);
    for (auto& row : j.ddh) {
        for (auto& d : row) d = conj_by(d);
    }
    return j;
}

DualGramField::DualGramField(GramFieldPtr base, bool analytic_jet) : base_(std::move(base)), analytic_jet_(analytic_jet) {
    if (!base_) throw PreconditionError("DualGramField: null base");
    fd_ = base_->fd();
}

CMat DualGramField::gram(const BasePoint& t) const {
    const CMat h = base_->gram(t);
    const CMat G = solve_hpd(h, CMat(CMat::Identity(h.rows(), h.cols())));
    return hermitian_part(CMat(G.transpose()));
}

GramJet DualGramField::jet(const BasePoint& t) const {
    if (!analytic_jet_) return GramField::jet(t);
    const GramJet b = base_->jet(t);
    const auto m = b.dh.size();
    const CMat G = hermitian_part(solve_hpd(b.h, CMat(CMat::Identity(b.h.rows(), b.h.cols()))));
    GramJet out;
    out.h = G.transpose();
    out.dh.resize(m);
    out.ddh.assign(m, std::vector<CMat>(m));
    for (std::size_t j = 0; j < m; ++j) out.dh[j] = (-G * b.dh[j] * G).transpose();
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < m; ++k) {
            const CMat dbk = b.dh[k].adjoint();  // ∂̄_k h
            const CMat v = -G * b.ddh[j][k] * G + G * dbk * G * b.dh[j] * G + G * b.dh[j] * G * dbk * G;
            out.ddh[j][k] = v.transpose();
        }
    }
    return out;
}

// --------------------------------------------------------------- curvature

CurvatureTensor curvature_from_jet(const GramJet& jet) {
    const auto m = static_cast<int>(jet.dh.size());
    check_gram(jet.h);
    CurvatureTensor c;
    c.m = m;
    c.h = jet.h;
    c.theta.resize(static_cast<std::size_t>(m * m));
    for (int j = 0; j < m; ++j) {
        const CMat A = solve_hpd(jet.h, jet.dh[static_cast<std::size_t>(j)]);  // h⁻¹ ∂_j h
        for (int k = 0; k < m; ++k) {
            const CMat& dd = jet.ddh[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            const CMat dbk = jet.dh[static_cast<std::size_t>(k)].adjoint();
            c.theta[static_cast<std::size_t>(j * m + k)] = solve_hpd(jet.h, CMat(-dd + dbk * A));
        }
    }
    return c;
}

CurvatureTensor chern_curvature(const GramField& field, const BasePoint& t) {
    return curvature_from_jet(field.jet(t));
}

double curvature_hermitian_defect(const CurvatureTensor& curv) {
    const int d = curv.dim();
    RVec s(d);
    for (int i = 0; i < d; ++i) s(i) = 1.0 / std::sqrt(curv.h(i, i).real());
    double num = 0.0;
    for (int j = 0; j < curv.m; ++j) {
        for (int k = 0; k < curv.m; ++k) {
            const CMat a = s.asDiagonal() * curv.h * curv.at(j, k) * s.asDiagonal();
            const CMat b = s.asDiagonal() * curv.h * curv.at(k, j) * s.asDiagonal();
            num = std::max(num, (a.adjoint() - b).cwiseAbs().maxCoeff());
        }
    }
    return num;
}

CMat nakano_matrix(const CurvatureTensor& curv) {
    const int d = curv.dim();
    const int m = curv.m;
    CMat Q(m * d, m * d);
    for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) Q.block(k * d, j * d, d, d) = curv.h * curv.at(j, k);
    }
    // defect measured in the frame normalized by the Gram diagonal, against unit scale
    RVec s(m * d);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < d; ++i) s(j * d + i) = 1.0 / std::sqrt(curv.h(i, i).real());
    }
    const double defect = hermitian_defect(CMat(s.asDiagonal() * Q * s.asDiagonal()), 1.0);
    if (defect > 1e-6) {
        throw NonHermitianError("nakano: curvature form is not Hermitian (relative defect " + std::to_string(defect) +
                                ")");
    }
    return hermitian_part(Q);
}

double nakano_min_eig(const CurvatureTensor& curv) {
    const int d = curv.dim();
    const int m = curv.m;
    CMat H = CMat::Zero(m * d, m * d);
    for (int j = 0; j < m; ++j) H.block(j * d, j * d, d, d) = curv.h;
    return min_generalized_eigenvalue(nakano_matrix(curv), H);
}

cplx nakano_form(const CurvatureTensor& curv, const CMat& U) {
    if (U.rows() != curv.dim() || U.cols() != curv.m) throw PreconditionError("nakano_form: tuple must be d × m");
    cplx s{0.0, 0.0};
    for (int j = 0; j < curv.m; ++j) {
        for (int k = 0; k < curv.m; ++k) s += U.col(k).dot(curv.h * curv.at(j, k) * U.col(j));
    }
    return s;
}

double griffiths_min(const CurvatureTensor& curv, int grid_size) {
    if (grid_size < 2) throw PreconditionError("griffiths_min: grid too small");
    // Validates Hermitian structure as a side effect.
    (void)nakano_matrix(curv);
    if (curv.m == 1) return min_generalized_eigenvalue(curv.h * curv.at(0, 0), curv.h);
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a <= grid_size; ++a) {
        const double alpha = 0.5 * kPi * a / grid_size;
        const int nb = (a == 0) ? 1 : grid_size;
        for (int b = 0; b < nb; ++b) {
            const double beta = 2.0 * kPi * b / grid_size;
            const cplx v[2] = {std::cos(alpha), std::polar(std::sin(alpha), beta)};
            CMat A = CMat::Zero(curv.dim(), curv.dim());
            for (int j = 0; j < 2; ++j) {
                for (int k = 0; k < 2; ++k) A += v[j] * std::conj(v[k]) * (curv.h * curv.at(j, k));
            }
            best = std::min(best, min_generalized_eigenvalue(A, curv.h));
        }
    }
    return best;
}

double curvature_norm(const CurvatureTensor& curv) {
    Eigen::LLT<CMat> llt(curv.h);
    if (llt.info() != Eigen::Success) throw IllConditionedError("curvature_norm: metric is not positive definite");
    const CMat L = llt.matrixL();
    double best = 0.0;
    for (const auto& th : curv.theta) {
        const CMat X = L.adjoint() * th;
        // Y = X L^{-H}  ⇔  Y^H = L^{-1} X^H
        const CMat Yh = L.triangularView<Eigen::Lower>().solve(CMat(X.adjoint()));
        best = std::max(best, spectral_norm(Yh));
    }
    return best;
}

double dual_curvature_residual(const GramFieldPtr& field, const BasePoint& t, int n_tuples, std::uint64_t seed,
                               bool analytic_dual_jet) {
    if (n_tuples < 1) throw PreconditionError("dual_curvature_residual: need at least one tuple");
    const auto curv = chern_curvature(*field, t);
    const DualGramField dual(field, analytic_dual_jet);
    const auto dcurv = chern_curvature(dual, t);
    const int d = curv.dim();
    const int m = curv.m;
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int s = 0; s < n_tuples; ++s) {
        CMat Xi(d, m);
        for (int j = 0; j < m; ++j) {
            for (int a = 0; a < d; ++a) Xi(a, j) = cplx(2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0);
        }
        double norm = 0.0;
        for (int j = 0; j < m; ++j) norm += Xi.col(j).dot(dcurv.h * Xi.col(j)).real();
        Xi /= std::sqrt(norm);
        const CMat U = solve_hpd(curv.h, CMat(Xi.conjugate()));
        cplx lhs{0.0, 0.0};
        cplx rhs{0.0, 0.0};
        for (int j = 0; j < m; ++j) {
            for (int k = 0; k < m; ++k) {
                lhs += Xi.col(k).dot(dcurv.h * dcurv.at(j, k) * Xi.col(j));
                rhs += U.col(j).dot(curv.h * curv.at(j, k) * U.col(k));
            }
        }
        worst = std::max(worst, std::abs(lhs + rhs));
    }
    return worst;
}

double log_norm_psh_residual(const GramField& field, const std::function<CVec(const BasePoint&)>& section,
                             const std::vector<BasePoint>& grid) {
    if (grid.empty()) throw PreconditionError("log_norm_psh_residual: empty grid");
    const int m = field.base_dim();
    double best = std::numeric_limits<double>::infinity();
    for (const auto& t : grid) {
        const std::function<double(const RVec&)> f = [&](const RVec& x) {
            const BasePoint s = to_complex(x);
            const CMat h = field.gram(s);
            const CMat G = solve_hpd(h, CMat(CMat::Identity(h.rows(), h.cols())));
            const CVec xi = section(s);
            const double n2 = xi.dot(G.transpose() * xi).real();
            if (!(n2 > 0.0)) throw DomainError("log_norm_psh_residual: section vanishes");
            return std::log(n2);
        };
        const auto jet = fd_jet<double>(f, to_real(t), fiber_step(t, field.fd()), field.fd().richardson);
        CMat H(m, m);
        for (int j = 0; j < m; ++j) {
            for (int k = 0; k < m; ++k) H(j, k) = wirtinger_d_dbar(jet, j, k);
        }
        best = std::min(best, min_eigenvalue(H));
    }
    return best;
}

double normal_tuple_second_derivative_residual(const GramField& field, const BasePoint& t0, const CMat& U0) {
    const int m = field.base_dim();
    if (U0.rows() != field.dim() || U0.cols() != m) {
        throw PreconditionError("normal_tuple_second_derivative_residual: tuple must be d × m");
    }
    const GramJet j0 = field.jet(t0);
    const auto curv = curvature_from_jet(j0);
    std::vector<CMat> conn(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) conn[static_cast<std::size_t>(i)] = solve_hpd(j0.h, j0.dh[static_cast<std::size_t>(i)]);

    const std::function<CMat(const RVec&)> G = [&](const RVec& x) {
        const BasePoint t = to_complex(x);
        CMat U = U0;
        for (int i = 0; i < m; ++i) U -= (t(i) - t0(i)) * conn[static_cast<std::size_t>(i)] * U0;
        return CMat(U.adjoint() * field.gram(t) * U);  // (k, j) entry: u_k^H h u_j
    };
    const auto jet = fd_jet<CMat>(G, to_real(t0), fiber_step(t0, field.fd()), field.fd().richardson);
    cplx second{0.0, 0.0};
    for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) second += wirtinger_d_dbar(jet, j, k)(k, j);
    }
    return std::abs(second + nakano_form(curv, U0));
}

// ----------------------------------------------------------------- F-model

FModel::FModel(int cutoff, int anti_cutoff) : cutoff_(cutoff), anti_cutoff_(anti_cutoff) {
    if (cutoff < 0 || anti_cutoff < 0) throw PreconditionError("FModel: cutoffs must be non-negative");
    // Holomorphic subframe first, then the rest ordered by (m, k).
    for (int a = 0; a <= cutoff; ++a) labels_.push_back({a, 0});
    for (int m = -anti_cutoff; m <= cutoff; ++m) {
        const int kmax = m >= 0 ? std::min(anti_cutoff, cutoff - m) : std::min(cutoff, anti_cutoff + m);
        for (int k = (m >= 0 ? 1 : 0); k <= kmax; ++k) labels_.push_back({m, k});
    }
}

CMat FModel::samples(const QuadratureRule& rule) const {
    if (rule.is_p1()) throw PreconditionError("FModel: needs a plane rule");
    const auto n = static_cast<Eigen::Index>(rule.size());
    CMat S(n, dim());
    for (Eigen::Index i = 0; i < n; ++i) {
        const cplx z = rule.nodes()[static_cast<std::size_t>(i)];
        const double u = std::norm(z);
        for (int c = 0; c < dim(); ++c) {
            const auto [m, k] = labels_[static_cast<std::size_t>(c)];
            const int am = std::abs(m);
            // Generalized Laguerre L_k^{(|m|)}(u) by the three-term recurrence.
            double l0 = 1.0;
            double l1 = 1.0 + am - u;
            double lk = k == 0 ? l0 : l1;
            for (int q = 1; q < k; ++q) {
                const double l2 = ((2.0 * q + 1.0 + am - u) * l1 - (q + am) * l0) / (q + 1.0);
                l0 = l1;
                l1 = l2;
                lk = l2;
            }
            cplx p{1.0, 0.0};
            const cplx base = m >= 0 ? z : std::conj(z);
            for (int q = 0; q < am; ++q) p *= base;
            const double norm = std::sqrt(kPi * std::exp(std::lgamma(k + am + 1.0) - std::lgamma(k + 1.0)));
            S(i, c) = p * lk / norm;
        }
    }
    return S;
}

CMat FModel::embed_monomials() const {
    CMat E = CMat::Zero(dim(), cutoff_ + 1);
    for (int a = 0; a <= cutoff_; ++a) E(a, a) = std::sqrt(kPi * std::exp(std::lgamma(a + 1.0)));
    return E;
}

std::shared_ptr<L2GramField> fmodel_gram_field(const FModel& model, WeightPtr phi, const QuadratureRule& rule) {
    return std::make_shared<L2GramField>(model.samples(rule), std::move(phi), rule);
}

double subbundle_formula_residual(const WeightPtr& phi, int cutoff, int anti_cutoff, const BasePoint& t,
                                  const CMat& U, const QuadratureRule& rule) {
    if (anti_cutoff < cutoff) throw PreconditionError("subbundle_formula_residual: need N_b >= N");
    const Basis basis = Basis::plane(cutoff);
    const FModel model(cutoff, anti_cutoff);
    const CMat FS = model.samples(rule);
    const L2GramField fieldF(FS, phi, rule);
    const L2GramField fieldE(basis, phi, rule);
    const auto curvF = chern_curvature(fieldF, t);
    const auto curvE = chern_curvature(fieldE, t);
    const CMat UF = model.embed_monomials() * U;
    const cplx formF = nakano_form(curvF, UF);
    const cplx formE = nakano_form(curvE, U);
    const CMat S = second_fundamental_form(basis, *phi, t, rule, U, DerivativeMode::analytic, {}, &FS);
    return std::abs(formF - S.sum() - formE);
}

double hormander_bound_margin(const L2GramField& field, const BasePoint& t, const CMat& U) {
    const int m = field.base_dim();
    if (U.rows() != field.dim() || U.cols() != m) throw PreconditionError("hormander_bound_margin: tuple must be d × m");
    const auto curv = chern_curvature(field, t);
    const double lhs = nakano_form(curv, U).real();
    const RVec mu = weighted_measure(field.weight(), t, field.rule());
    const CMat BU = field.samples() * U;
    std::vector<double> terms(field.rule().size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        const CMat D = d_matrix(field.weight(), t, field.rule().nodes()[i]);
        const CVec u = BU.row(ii).transpose();
        terms[i] = (u.transpose() * D * u.conjugate()).value().real() * mu(ii);
    }
    return lhs - pairwise_sum(std::span<const double>(terms));
}

CMat hormander_bound_matrix(const L2GramField& field, const BasePoint& t) {
    const int m = field.base_dim();
    const int d = field.dim();
    const auto curv = chern_curvature(field, t);
    const RVec mu = weighted_measure(field.weight(), t, field.rule());
    const auto n = static_cast<Eigen::Index>(field.rule().size());
    std::vector<RVec> dre(static_cast<std::size_t>(m * m), RVec(n));
    std::vector<RVec> dim(static_cast<std::size_t>(m * m), RVec(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const CMat D = d_matrix(field.weight(), t, field.rule().nodes()[static_cast<std::size_t>(i)]);
        for (int j = 0; j < m; ++j) {
            for (int k = 0; k < m; ++k) {
                const auto idx = static_cast<std::size_t>(j * m + k);
                dre[idx](i) = D(j, k).real() * mu(i);
                dim[idx](i) = D(j, k).imag() * mu(i);
            }
        }
    }
    CMat M = nakano_matrix(curv);
    const CMat& B = field.samples();
    for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) {
            const auto idx = static_cast<std::size_t>(j * m + k);
            const CMat block = B.adjoint() * (dre[idx].asDiagonal() * B) +
                               cplx(0.0, 1.0) * (B.adjoint() * (dim[idx].asDiagonal() * B));
            M.block(k * d, j * d, d, d) -= block;
        }
    }
    return hermitian_part(M);
}

DegeneracyRecord degeneracy_diagnostics(const L2GramField& field, const BasePoint& t, double fd_step) {
    if (field.base_dim() != 1) throw PreconditionError("degeneracy_diagnostics: needs base dimension 1");
    const auto& phi = field.weight();
    auto V = [&](cplx z) {
        const auto d = wirtinger(phi, t, z);
        if (!(d.hess_zz > 0.0)) throw FiberDegeneracyError("degeneracy_diagnostics: phi_zzbar is not positive");
        return d.mixed_tzbar(0) / d.hess_zz;
    };
    DegeneracyRecord rec;
    for (const cplx z : field.rule().nodes()) {
        const double h = fd_step * (1.0 + std::abs(z));
        const cplx vx = (V(z + h) - V(z - h)) / (2.0 * h);
        const cplx vy = (V(z + cplx(0.0, h)) - V(z - cplx(0.0, h))) / (2.0 * h);
        const cplx dbar = 0.5 * (vx + cplx(0.0, 1.0) * vy);
        rec.dbar_v_residual = std::max(rec.dbar_v_residual, std::abs(dbar));
        rec.max_abs_v = std::max(rec.max_abs_v, std::abs(V(z)));
    }
    const auto curv = chern_curvature(field, t);
    rec.min_curv_eig = nakano_min_eig(curv);
    rec.curvature_norm = curvature_norm(curv);
    return rec;
}

}  // namespace dimlab
