#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "dimlab/families.hpp"
#include "dimlab/weights.hpp"

using namespace dimlab;

namespace {

using E = std::array<int, kMaxPolyVars>;

std::shared_ptr<PolyWeight> poly_weight(int m, BiPoly p) { return std::make_shared<PolyWeight>(m, std::move(p), "polynomial"); }

// |z|² + c|t|² over a one-dimensional base
std::shared_ptr<PolyWeight> decoupled(double c) {
    BiPoly p(2);
    p.add(1.0, E{0, 1}, E{0, 1});
    p.add(c, E{1, 0}, E{1, 0});
    return poly_weight(1, p);
}

std::vector<std::shared_ptr<const WeightFamily>> builtins() {
    BiPoly q(1), l(1), c(1);
    q.add(1.0, {}).add(1.0, E{1}, E{1});
    l.add(0.5, E{0}, E{1});
    c.add(1.0, E{1}, E{1});
    BiPoly chi(1);
    chi.add(1.0, E{1}, E{1});
    BiPoly lin(1);
    lin.add(0.3, E{1}, E{0});
    return {make_fock_scaled(1),
            make_fock_scaled(2),
            make_fock_shifted(),
            make_fock_general(q, l, c),
            std::make_shared<FsFamily>(4, 1, std::vector<FsTerm>{{ChartFunction::chi0, chi}, {ChartFunction::re_z, lin}}),
            std::make_shared<MobiusFlow>(4)};
}

}  // namespace

TEST(Weights, QuadraticFiberWeight) {
    BiPoly p(2);
    p.add(1.0, E{0, 1}, E{0, 1});
    const auto phi = poly_weight(1, p);
    const auto d = wirtinger(*phi, base_point({0.3, -0.2}), {0.7, 0.1});
    EXPECT_DOUBLE_EQ(d.hess_zz, 1.0);
    EXPECT_EQ(d.grad_t(0), cplx(0.0));
}

TEST(Weights, FockScaledTable) {
    const auto phi = make_fock_scaled(1);
    for (auto mode : {DerivativeMode::analytic, DerivativeMode::finite_difference}) {
        const auto d = wirtinger(*phi, base_point(0.5), 1.0, mode);
        EXPECT_NEAR(std::abs(d.grad_t(0) - 0.5), 0.0, 1e-8);
        EXPECT_NEAR(std::abs(d.mixed_tzbar(0) - 0.5), 0.0, 1e-8);
        EXPECT_NEAR(std::abs(d.hess_tt(0, 0) - 1.0), 0.0, 1e-8);
        EXPECT_NEAR(d.hess_zz, 1.25, 1e-8);
    }
}

TEST(Weights, RealPartOfProductTable) {
    // Re(t z) = (tz + t̄z̄)/2
    BiPoly p(2);
    p.add(1.0, E{1, 1}, E{0, 0});
    const auto phi = poly_weight(1, p);
    const auto a = wirtinger(*phi, base_point(0.0), 0.0);
    const auto f = wirtinger_fd(*phi, base_point(0.0), 0.0);
    for (const auto* d : {&a, &f}) {
        EXPECT_NEAR(std::abs(d->hess_tt(0, 0)), 0.0, 1e-9);
        EXPECT_NEAR(std::abs(d->mixed_tzbar(0)), 0.0, 1e-9);
        EXPECT_NEAR(std::abs(d->mixed_tz(0) - 0.5), 0.0, 1e-9);
    }
}

TEST(Weights, DMatrixExamples) {
    EXPECT_NEAR(d_matrix(*make_fock_scaled(1), base_point(0.0), 1.0)(0, 0).real(), 1.0, 1e-14);
    for (cplx t : {cplx(0.0), cplx(0.4, -0.3)}) {
        EXPECT_NEAR(std::abs(d_matrix(*make_fock_shifted(), base_point(t), {0.2, 0.9})(0, 0)), 0.0, 1e-14);
        EXPECT_NEAR(d_matrix(*decoupled(1.0), base_point(t), {-1.1, 0.4})(0, 0).real(), 1.0, 1e-14);
    }
}

TEST(Weights, DMatrixRejectsDegenerateFiber) {
    BiPoly p(2);
    p.add(1.0, E{1, 0}, E{1, 0});  // |t|², flat in z
    EXPECT_THROW(d_matrix(*poly_weight(1, p), base_point(0.1), 0.5), FiberDegeneracyError);
}

TEST(Weights, HessianQuotientExamples) {
    EXPECT_LE(hessian_quotient_check(*make_fock_scaled(1), 0.3, 0.7), 1e-8);
    EXPECT_LE(hessian_quotient_check(*make_fock_shifted(), {0.2, 0.1}, {-0.5, 0.3}), 1e-12);
    EXPECT_LE(hessian_quotient_check(*decoupled(2.0), {0.6, -0.1}, {0.2, 1.5}), 1e-12);
}

TEST(Weights, PshExamples) {
    std::vector<WeightPoint> grid;
    for (double r : {0.1, 0.5, 1.0, 2.0}) {
        for (int k = 0; k < 6; ++k) {
            const cplx z = std::polar(r, 2.0 * std::numbers::pi * k / 6.0);
            for (cplx t : {cplx(0.0), cplx(0.5, 0.2), cplx(-1.0, 0.0)}) grid.push_back({base_point(t), z});
        }
    }
    EXPECT_GE(psh_check(*make_fock_scaled(1), grid), 0.0);
    EXPECT_NEAR(psh_check(*decoupled(-1.0), grid), -1.0, 1e-12);
    const FunctionWeight zero(1, [](const BasePoint&, cplx) { return 0.0; }, "zero");
    EXPECT_NEAR(psh_check(zero, grid), 0.0, 1e-12);
}

TEST(Weights, FdMatchesAnalyticOnBuiltins) {
    const std::vector<cplx> zs{0.0, {0.3, 0.4}, {-1.2, 0.5}};
    for (const auto& phi : builtins()) {
        for (cplx t : {cplx(0.0), cplx(0.3, -0.2)}) {
            BasePoint tp = BasePoint::Constant(phi->base_dim(), t);
            for (cplx z : zs) EXPECT_LE(fd_analytic_discrepancy(*phi, tp, z), 1e-6) << phi->family_id();
        }
    }
}

TEST(Weights, HessTtIsHermitian) {
    const auto phi = make_fock_scaled(2);
    const auto d = wirtinger(*phi, base_point({0.3, 0.1}, {-0.2, 0.4}), {0.5, 0.5});
    EXPECT_LT((d.hess_tt - d.hess_tt.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Weights, DMatrixCovariantUnderBaseRotation) {
    // φ(t, z) = (1 + |t1|² + 2|t2|²)|z|² + Re(t1 z̄²); φ_U(s, z) = φ(U s, z), U a real rotation
    const double c = std::cos(0.7), s = std::sin(0.7);
    auto build = [](const BiPoly& l1, const BiPoly& l2, const BiPoly& l1b, const BiPoly& l2b) {
        BiPoly zz(3), one(3), zb2(3);
        zz.add(1.0, E{0, 0, 1}, E{0, 0, 1});
        one.add(1.0, {});
        zb2.add(1.0, E{0, 0, 0}, E{0, 0, 2});
        return (one + l1 * l1b + cplx(2.0) * (l2 * l2b)) * zz + l1 * zb2;
    };
    BiPoly t1(3), t2(3), t1b(3), t2b(3);
    t1.add(1.0, E{1, 0, 0});
    t2.add(1.0, E{0, 1, 0});
    t1b.add(1.0, E{}, E{1, 0, 0});
    t2b.add(1.0, E{}, E{0, 1, 0});
    const auto phi = poly_weight(2, build(t1, t2, t1b, t2b));
    // (U s)_1 = c s1 − s s2, (U s)_2 = s s1 + c s2
    const BiPoly u1 = cplx(c) * t1 + cplx(-s) * t2, u2 = cplx(s) * t1 + cplx(c) * t2;
    const BiPoly u1b = cplx(c) * t1b + cplx(-s) * t2b, u2b = cplx(s) * t1b + cplx(c) * t2b;
    const auto rotated = poly_weight(2, build(u1, u2, u1b, u2b));
    CMat U(2, 2);
    U << c, -s, s, c;
    const BasePoint sp = base_point({0.2, -0.1}, {0.4, 0.3});
    const BasePoint tp = U * sp;
    const cplx z(0.6, -0.8);
    const CMat lhs = d_matrix(*rotated, sp, z);
    const CMat rhs = U.transpose() * d_matrix(*phi, tp, z) * U.conjugate();
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Weights, StencilLeavingDomainIsReported) {
    const auto base = std::make_shared<FsFamily>(4, 1, std::vector<FsTerm>{});
    EXPECT_THROW(wirtinger(*base, base_point(0.0), 0.0, DerivativeMode::finite_difference, FdOptions{-1.0, true}),
                 PreconditionError);
}

TEST(Weights, MakeWeightRejectsUnknownFamily) {
    EXPECT_THROW(make_weight("nope", nlohmann::json::object()), PreconditionError);
}
