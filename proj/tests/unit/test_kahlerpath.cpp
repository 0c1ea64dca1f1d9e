#include <cmath>

#include <gtest/gtest.h>

#include "dimlab/kahlerpath.hpp"
#include "dimlab/linalg.hpp"

using namespace dimlab;

namespace {

const QuadratureRule& p1_rule() {
    static const QuadratureRule rule = build_p1_rule(40, 48);
    return rule;
}

WeightPtr fs(int l, std::vector<FsTerm> terms) { return std::make_shared<FsFamily>(l, 1, std::move(terms)); }

BiPoly abs_t_sq(double c) {
    BiPoly p(1);
    p.add(c, {1}, {1});
    return p;
}

// |t|²·χ₀ + Re(t/2)·Re z/(1+|z|²)
WeightPtr bump(int l) {
    BiPoly lin(1);
    lin.add(0.5, {1}, {0});
    return fs(l, {{ChartFunction::chi0, abs_t_sq(1.0)}, {ChartFunction::re_z, lin}});
}

// Re t ↦ x·Re z/(1+|z|²)
WeightPtr real_affine(int l) {
    BiPoly lin(1);
    lin.add(1.0, {1}, {0});
    return fs(l, {{ChartFunction::re_z, lin}});
}

// x² χ₀ + x Im z/(1+|z|²), written with Re(t²/2 + |t|²/2) = x²
WeightPtr real_convex(int l) {
    BiPoly sq(1);
    sq.add(0.5, {2}, {0});
    sq.add(0.5, {1}, {1});
    BiPoly lin(1);
    lin.add(1.0, {1}, {0});
    return fs(l, {{ChartFunction::chi0, sq}, {ChartFunction::im_z, lin}});
}

PathSpec path(WeightPtr w, int l, double scale = 1.0) { return {std::move(w), Basis::p1(l), p1_rule(), scale}; }

const std::vector<cplx> kPoints{{0.0, 0.0}, {0.4, 0.1}, {-1.3, 0.7}, {2.5, -2.0}};

}  // namespace

TEST(KahlerPath, TIndependentPathHasZeroCurvature) {
    const auto p = path(fs(4, {}), 4);
    for (cplx z : kPoints) EXPECT_EQ(geodesic_curvature(p, 0.3, z), 0.0);
    EXPECT_NEAR(toeplitz_bound_margin(p, 0.3), 0.0, 1e-12);
}

TEST(KahlerPath, MatchesDMatrixEntry) {
    const auto p = path(bump(4), 4);
    const auto w = path_weight(p);
    for (cplx t : {cplx(0.0), cplx(0.3, -0.2)}) {
        for (cplx z : kPoints) {
            EXPECT_NEAR(geodesic_curvature(p, t, z), d_matrix(*w, base_point(t), z)(0, 0).real(), 1e-8);
        }
    }
}

TEST(KahlerPath, BumpCurvatureAtOriginIsChi0) {
    const auto p = path(fs(4, {{ChartFunction::chi0, abs_t_sq(1.0)}}), 4);
    for (cplx z : kPoints) EXPECT_NEAR(geodesic_curvature(p, 0.0, z), std::norm(z) / (1.0 + std::norm(z)), 1e-12);
    EXPECT_GE(toeplitz_bound_margin(p, 0.0), -1e-5);
}

TEST(KahlerPath, RealAffinePathIdentity) {
    const auto p = path(real_affine(4), 4);
    for (double x : {0.0, 0.2, -0.3}) {
        for (cplx z : kPoints) {
            const auto id = real_path_identity(p, x, z);
            EXPECT_LE(id.residual(), 1e-8);
            EXPECT_LE(id.four_c, 1e-12);
        }
    }
}

TEST(KahlerPath, RealConvexPathIdentity) {
    const auto p = path(real_convex(6), 6);
    for (double x : {0.0, 0.25}) {
        for (cplx z : kPoints) EXPECT_LE(real_path_identity(p, x, z).residual(), 1e-8);
    }
}

TEST(KahlerPath, ToeplitzBoundOnBump) {
    for (int l : {4, 6, 8}) {
        const auto p = path(bump(l), l);
        for (cplx t : {cplx(0.0), cplx(0.3, 0.1), cplx(-0.5, 0.2)}) EXPECT_GE(toeplitz_bound_margin(p, t), -1e-5);
    }
}

TEST(KahlerPath, MobiusMarginNonnegative) {
    const PathSpec p{std::make_shared<MobiusFlow>(4), Basis::p1(4), p1_rule(), 1.0};
    for (cplx t : {cplx(0.0), cplx(0.3, 0.2)}) EXPECT_GE(toeplitz_bound_margin(p, t), -1e-5);
}

TEST(KahlerPath, MarginVanishesQuadraticallyInScale) {
    constexpr double kPinned = 1e-6;  // observed margin/s² is below 1e-8 at s = 0.1
    for (double s : {0.1, 0.05, 0.025}) {
        for (cplx t : {cplx(0.0), cplx(0.3, 0.1)}) {
            const double m = toeplitz_bound_margin(path(bump(4), 4, s), t);
            EXPECT_LE(std::abs(m) / (s * s), kPinned) << s;
        }
    }
}

TEST(KahlerPath, QuantizationReport) {
    const std::vector<cplx> grid{0.0, {0.3, 0.1}};
    const auto rows = quantization_report([](int l) { return path(bump(l), l); }, grid, {4, 6, 8});
    ASSERT_EQ(rows.size(), 3u);
    for (const auto& r : rows) EXPECT_GE(r.margin, -1e-5) << r.degree;
    EXPECT_EQ(rows[2].degree, 8);

    const auto flat = quantization_report(
        [](int l) { return PathSpec{std::make_shared<MobiusFlow>(l), Basis::p1(l), p1_rule(), 1.0}; }, grid, {4, 6});
    for (const auto& r : flat) EXPECT_NEAR(r.nakano_min_eig, 0.0, 1e-5);

    const auto zero = quantization_report([](int l) { return path(fs(l, {}), l); }, grid, {4, 6});
    for (const auto& r : zero) {
        EXPECT_NEAR(r.margin, 0.0, 1e-12);
        EXPECT_EQ(r.min_c, 0.0);
    }
}

TEST(KahlerPath, ValidationRejectsBadPaths) {
    EXPECT_THROW(validate_path({make_fock_scaled(2), Basis::plane(4),
                                build_plane_rule(PlaneDomainSpec::gaussian_plane(1.0, 12.0), 64, 32), 1.0}),
                 PreconditionError);
    EXPECT_THROW(validate_path({bump(4), Basis::p1(4), build_plane_rule(PlaneDomainSpec::disk(1.0), 8, 8), 1.0}),
                 PreconditionError);
}

TEST(KahlerPath, PerturbationIsScaledDifference) {
    const auto p = path(bump(4), 4, 0.5);
    const auto psi = path_perturbation(p);
    const auto full = path_weight(p);
    const auto t = base_point({0.3, -0.2});
    for (cplx z : kPoints) {
        const double expected = 0.5 * (bump(4)->value(t, z) - bump(4)->value(base_point(0.0), z));
        EXPECT_NEAR(psi->value(t, z), expected, 1e-12);
        EXPECT_NEAR(full->value(t, z) - psi->value(t, z), bump(4)->value(base_point(0.0), z), 1e-12);
    }
}
