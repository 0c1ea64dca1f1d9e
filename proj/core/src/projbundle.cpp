#include "dimlab/projbundle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dimlab/linalg.hpp"

namespace dimlab {

namespace {

constexpr double kFlatTolerance = 1e-6;
constexpr double kMaxCondition = 1e8;

CMat identity2() { return CMat::Identity(2, 2); }

}  // namespace

RankTwoMetricFamily::RankTwoMetricFamily(std::string id, Fn fn, nlohmann::json params)
    : id_(std::move(id)), fn_(std::move(fn)), params_(std::move(params)) {
    if (!fn_) throw PreconditionError("rank-two family: null metric function");
}

RankTwoMetricFamily RankTwoMetricFamily::conformal(double c) {
    return {"conformal", [c](cplx t) { return CMat(std::exp(-c * std::norm(t)) * identity2()); }, {{"c", c}}};
}

RankTwoMetricFamily RankTwoMetricFamily::diagonal(double a, double b) {
    return {"diagonal",
            [a, b](cplx t) {
                CMat h = CMat::Zero(2, 2);
                h(0, 0) = std::exp(-a * std::norm(t));
                h(1, 1) = std::exp(-b * std::norm(t));
                return h;
            },
            {{"a", a}, {"b", b}}};
}

RankTwoMetricFamily RankTwoMetricFamily::unimodular() {
    return {"unimodular", [](cplx t) {
                CMat A = identity2();
                A(0, 1) = t;
                return CMat(A.adjoint() * A);
            }};
}

RankTwoMetricFamily RankTwoMetricFamily::constant(const CMat& h0) {
    if (h0.rows() != 2 || h0.cols() != 2) throw PreconditionError("rank-two family: h0 must be 2x2");
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (int i = 0; i < 2; ++i) {
        re.push_back({h0(i, 0).real(), h0(i, 1).real()});
        im.push_back({h0(i, 0).imag(), h0(i, 1).imag()});
    }
    return {"constant", [h0](cplx) { return h0; }, {{"re", re}, {"im", im}}};
}

RankTwoMetricFamily RankTwoMetricFamily::transformed(const CMat& U) const {
    if (U.rows() != 2 || U.cols() != 2) throw PreconditionError("rank-two family: U must be 2x2");
    Fn base = fn_;
    nlohmann::json p = params_;
    p["transformed"] = true;
    return {id_, [base, U](cplx t) { return CMat(U.adjoint() * base(t) * U); }, p};
}

RankTwoMetricFamily RankTwoMetricFamily::from_json(const nlohmann::json& spec) {
    const std::string kind = spec.value("kind", std::string());
    if (kind == "conformal") return conformal(spec.value("c", 1.0));
    if (kind == "diagonal") return diagonal(spec.value("a", 1.0), spec.value("b", 1.0));
    if (kind == "unimodular") return unimodular();
    if (kind == "constant") {
        if (!spec.contains("re")) throw PreconditionError("rank-two family 'constant' needs 're'");
        CMat h(2, 2);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                const double im = spec.contains("im") ? spec.at("im").at(i).at(j).get<double>() : 0.0;
                h(i, j) = cplx(spec.at("re").at(i).at(j).get<double>(), im);
            }
        }
        return constant(h);
    }
    throw PreconditionError("unknown rank-two family '" + kind +
                            "' (expected conformal, diagonal, unimodular, constant)");
}

CMat RankTwoMetricFamily::operator()(cplx t) const {
    const CMat h = fn_(t);
    if (h.rows() != 2 || h.cols() != 2 || !h.allFinite()) throw DomainError("rank-two family: invalid h_V");
    if (hermitian_defect(h) > 1e-12) throw NonHermitianError("rank-two family: h_V is not Hermitian");
    const Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(h), Eigen::EigenvaluesOnly);
    const RVec ev = es.eigenvalues();
    if (!(ev(0) > 0.0)) throw DomainError("rank-two family: h_V is not positive definite");
    if (ev(1) / ev(0) > kMaxCondition) throw IllConditionedError("rank-two family: h_V condition exceeds 1e8");
    return h;
}

ProjInducedWeight::ProjInducedWeight(RankTwoMetricFamily family, int degree)
    : family_(std::move(family)), degree_(degree) {
    if (degree_ < 2) throw PreconditionError("induced_weight: degree l must be at least 2");
}

double ProjInducedWeight::value(const BasePoint& t, cplx w) const {
    if (t.size() != 1) throw PreconditionError("induced_weight: base must be one-dimensional");
    const CMat h = family_(t(0));
    const CMat G = solve_hpd(h, CMat(identity2())).transpose();
    CVec x(2);
    x << 1.0, w;
    // x G x^H with x a row vector
    const double q = (x.transpose() * G * x.conjugate())(0, 0).real();
    if (!(q > 0.0)) throw DomainError("induced_weight: dual norm is not positive");
    return degree_ * std::log(q);
}

nlohmann::json ProjInducedWeight::params() const {
    return {{"family", family_.id()}, {"family_params", family_.params()}, {"l", degree_}};
}

std::shared_ptr<ProjInducedWeight> induced_weight(const RankTwoMetricFamily& family, int degree) {
    return std::make_shared<ProjInducedWeight>(family, degree);
}

CMat e_bundle_gram(const RankTwoMetricFamily& family, cplx t, int degree, const QuadratureRule& rule) {
    return gram(Basis::p1(degree), *induced_weight(family, degree), base_point(t), rule);
}

std::shared_ptr<L2GramField> e_bundle_field(const RankTwoMetricFamily& family, int degree,
                                            const QuadratureRule& rule, FdOptions fd) {
    return std::make_shared<L2GramField>(Basis::p1(degree), induced_weight(family, degree), rule,
                                         GramDerivativeMode::finite_difference, DerivativeMode::finite_difference,
                                         fd);
}

double universal_constant_c2(const QuadratureRule& rule) {
    return e_bundle_gram(RankTwoMetricFamily::constant(identity2()), 0.0, 2, rule)(0, 0).real();
}

CMat sym_power_action(const CMat& B, int degree) {
    if (B.rows() != 2 || B.cols() != 2) throw PreconditionError("sym_power_action: B must be 2x2");
    if (degree < 0) throw PreconditionError("sym_power_action: negative degree");
    // (1,w)B = (B00 + w B10, B01 + w B11)
    const std::vector<cplx> y0{B(0, 0), B(1, 0)};
    const std::vector<cplx> y1{B(0, 1), B(1, 1)};
    auto mul = [](const std::vector<cplx>& a, const std::vector<cplx>& b) {
        std::vector<cplx> c(a.size() + b.size() - 1, cplx(0.0, 0.0));
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
        }
        return c;
    };
    CMat M = CMat::Zero(degree + 1, degree + 1);
    for (int k = 0; k <= degree; ++k) {
        std::vector<cplx> p{cplx(1.0, 0.0)};
        for (int i = 0; i < degree - k; ++i) p = mul(p, y0);
        for (int i = 0; i < k; ++i) p = mul(p, y1);
        for (int j = 0; j <= degree; ++j) M(j, k) = p[static_cast<std::size_t>(j)];
    }
    return M;
}

double det_identity_residual(const RankTwoMetricFamily& family, const std::vector<cplx>& t_grid,
                             const QuadratureRule& rule) {
    if (t_grid.empty()) throw PreconditionError("det_identity_residual: empty t-grid");
    const double c2 = universal_constant_c2(rule);
    double worst = 0.0;
    for (const cplx& t : t_grid) {
        const double det = family(t).determinant().real();
        const double e2 = e_bundle_gram(family, t, 2, rule)(0, 0).real();
        worst = std::max(worst, std::abs(e2 / (c2 * det) - 1.0));
    }
    return worst;
}

Theorem71Result theorem_71_check(const RankTwoMetricFamily& family, const std::vector<cplx>& t_grid, int sym_power,
                                 const QuadratureRule& rule) {
    if (t_grid.empty()) throw PreconditionError("theorem_71_check: empty t-grid");
    if (sym_power < 0) throw PreconditionError("theorem_71_check: symmetric power must be non-negative");
    // the chart weight pairs rows with h_V, so the column-convention Gram of V is h_V^T
    const CallableGramField hv(1, 2, [&family](const BasePoint& t) { return CMat(family(t(0)).transpose()); });
    Theorem71Result r;
    r.hypothesis_min = std::numeric_limits<double>::infinity();
    for (const cplx& t : t_grid) {
        r.hypothesis_min = std::min(r.hypothesis_min, griffiths_min(chern_curvature(hv, base_point(t))));
    }
    if (r.hypothesis_min < -kFlatTolerance) {
        throw HypothesisError("theorem_71_check: h_V is not Griffiths positive on the grid (min " +
                              std::to_string(r.hypothesis_min) + ")");
    }
    r.strictly_positive = r.hypothesis_min > kFlatTolerance;
    if (!r.strictly_positive) r.diagnostic = "h_V is flat on the grid; strict positivity is not expected";
    const auto field = e_bundle_field(family, 2 + sym_power, rule);
    r.min_nakano_eig = std::numeric_limits<double>::infinity();
    for (const cplx& t : t_grid) {
        r.min_nakano_eig = std::min(r.min_nakano_eig, nakano_min_eig(chern_curvature(*field, base_point(t))));
    }
    return r;
}

}  // namespace dimlab
