#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "dimlab/quadrature.hpp"
#include "oracle_values.hpp"

using namespace dimlab;

namespace {

template <class F>
cplx integrate_fn(const QuadratureRule& rule, F f) {
    std::vector<cplx> s;
    s.reserve(rule.size());
    for (const cplx& z : rule.nodes()) s.push_back(f(z));
    return integrate(rule, s);
}

}  // namespace

TEST(Quadrature, UnitDiskArea) {
    const auto rule = build_plane_rule(PlaneDomainSpec::disk(1.0), 16, 16);
    EXPECT_NEAR(integrate_fn(rule, [](cplx) { return cplx(1.0); }).real(), std::numbers::pi, 1e-12);
}

TEST(Quadrature, DiskSecondMoment) {
    const auto rule = build_plane_rule(PlaneDomainSpec::disk(1.0), 16, 16);
    const cplx v = integrate_fn(rule, [](cplx z) { return z * std::conj(z); });
    EXPECT_NEAR(v.real(), oracle::kDiskSecondMoment, 1e-12);
    EXPECT_NEAR(v.imag(), 0.0, 1e-14);
}

TEST(Quadrature, DiskMomentsExactAndOrthogonal) {
    const int nr = 8, na = 12;
    const auto rule = build_plane_rule(PlaneDomainSpec::disk(1.0), nr, na);
    for (int a = 0; a < nr; ++a) {
        for (int b = 0; b < nr; ++b) {
            if (a != b && std::abs(a - b) >= na) continue;
            const cplx v = integrate_fn(rule, [&](cplx z) { return std::pow(z, a) * std::pow(std::conj(z), b); });
            const double expected = a == b ? std::numbers::pi / (a + 1) : 0.0;
            EXPECT_NEAR(std::abs(v - expected), 0.0, 1e-13) << a << "," << b;
        }
    }
}

TEST(Quadrature, GaussianPlaneIntegral) {
    const auto rule = build_plane_rule(PlaneDomainSpec::gaussian_plane(1.0, 8.0), 64, 16);
    const cplx v = integrate_fn(rule, [](cplx z) { return cplx(std::exp(-std::norm(z))); });
    EXPECT_NEAR(v.real(), oracle::kGaussianPlaneIntegral, 1e-10);
    EXPECT_GT(rule.truncation_bound(), 0.0);
    EXPECT_LT(rule.truncation_bound(), 1e-20);
}

TEST(Quadrature, FubiniStudyArea) {
    const auto rule = build_p1_rule(8, 8);
    const cplx v = integrate_fn(rule, [](cplx z) { return cplx(1.0 / std::pow(1.0 + std::norm(z), 2)); });
    EXPECT_NEAR(v.real(), oracle::kFsArea, 1e-12);
}

TEST(Quadrature, P1BetaMoment) {
    const auto rule = build_p1_rule(8, 8);
    const cplx v = integrate_fn(rule, [](cplx z) { return cplx(std::norm(z) / std::pow(1.0 + std::norm(z), 4)); });
    EXPECT_NEAR(v.real(), oracle::kP1MomentU1D4, 1e-12);
}

TEST(Quadrature, ZeroSamplesGiveZero) {
    const auto rule = build_p1_rule(4, 4);
    EXPECT_EQ(integrate_fn(rule, [](cplx) { return cplx(0.0); }), cplx(0.0));
}

TEST(Quadrature, ConjugationCommutes) {
    const auto rule = build_plane_rule(PlaneDomainSpec::disk(1.0), 10, 12);
    auto f = [](cplx z) { return std::exp(z) * (1.0 + 0.3 * std::conj(z)); };
    const cplx a = integrate_fn(rule, f);
    const cplx b = integrate_fn(rule, [&](cplx z) { return std::conj(f(z)); });
    EXPECT_EQ(std::conj(a), b);
}

TEST(Quadrature, Linearity) {
    const auto rule = build_plane_rule(PlaneDomainSpec::gaussian_plane(1.0, 10.0), 40, 24);
    auto f = [](cplx z) { return std::exp(-std::norm(z)) * z * z; };
    auto g = [](cplx z) { return std::exp(-std::norm(z)) * (1.0 + std::norm(z)); };
    const cplx a(0.7, -1.3), b(2.0, 0.5);
    const cplx lhs = integrate_fn(rule, [&](cplx z) { return a * f(z) + b * g(z); });
    const cplx rhs = a * integrate_fn(rule, f) + b * integrate_fn(rule, g);
    EXPECT_LT(std::abs(lhs - rhs), 1e-13);
}

TEST(Quadrature, RefinementStable) {
    auto f = [](cplx z) { return cplx(std::pow(std::norm(z), 3) * std::exp(-std::norm(z))); };
    const auto coarse = build_plane_rule(PlaneDomainSpec::gaussian_plane(1.0, 12.0), 80, 16);
    const auto fine = build_plane_rule(PlaneDomainSpec::gaussian_plane(1.0, 12.0), 160, 32);
    const double a = integrate_fn(coarse, f).real();
    const double b = integrate_fn(fine, f).real();
    EXPECT_LT(std::abs(a - b) / std::abs(b), 1e-10);
}

TEST(Quadrature, PairwiseSumIsOrderFixed) {
    std::vector<double> v;
    for (int i = 0; i < 1000; ++i) v.push_back(1.0 / (i + 1.0));
    const double a = pairwise_sum(std::span<const double>(v));
    const double b = pairwise_sum(std::span<const double>(v));
    EXPECT_EQ(a, b);
}

TEST(Quadrature, RejectsBadCounts) {
    EXPECT_THROW(build_plane_rule(PlaneDomainSpec::disk(1.0), 1, 8), PreconditionError);
    EXPECT_THROW(build_plane_rule(PlaneDomainSpec::disk(1.0), 8, 3), PreconditionError);
    EXPECT_THROW(build_p1_rule(0, 8), PreconditionError);
    EXPECT_THROW(build_plane_rule(PlaneDomainSpec::disk(-1.0), 8, 8), PreconditionError);
}

TEST(Quadrature, RejectsShortCutoffForDegree) {
    // R² = 25 < 2·16 + 10·√32
    EXPECT_THROW(build_plane_rule(PlaneDomainSpec::gaussian_plane(1.0, 5.0), 40, 16, 16), PreconditionError);
    EXPECT_NO_THROW(build_plane_rule(PlaneDomainSpec::gaussian_plane(1.0, 12.0), 40, 16, 16));
}

TEST(Quadrature, LengthMismatch) {
    const auto rule = build_p1_rule(4, 4);
    std::vector<cplx> s(rule.size() + 1, cplx(1.0));
    EXPECT_THROW(integrate(rule, s), PreconditionError);
}
