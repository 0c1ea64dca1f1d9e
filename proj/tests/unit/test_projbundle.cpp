#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "dimlab/linalg.hpp"
#include "dimlab/projbundle.hpp"

using namespace dimlab;

namespace {

constexpr double kPi = std::numbers::pi;

const QuadratureRule& p1_rule() {
    static const QuadratureRule rule = build_p1_rule(40, 48);
    return rule;
}

CMat diag2(double a, double b) {
    CMat h = CMat::Zero(2, 2);
    h(0, 0) = a;
    h(1, 1) = b;
    return h;
}

const std::vector<cplx> kGrid{0.0, 0.3, {0.2, 0.4}};

}  // namespace

TEST(ProjBundle, MetricFamilies) {
    const cplx t(0.3, 0.4);
    EXPECT_LT((RankTwoMetricFamily::conformal(2.0)(t) - std::exp(-0.5) * CMat::Identity(2, 2)).cwiseAbs().maxCoeff(),
              1e-15);
    EXPECT_LT((RankTwoMetricFamily::diagonal(1.0, 2.0)(t) - diag2(std::exp(-0.25), std::exp(-0.5))).cwiseAbs().maxCoeff(),
              1e-15);
    const CMat u = RankTwoMetricFamily::unimodular()(t);
    EXPECT_NEAR(std::abs(u.determinant()), 1.0, 1e-14);
    CMat bad(2, 2);
    bad << 1.0, 2.0, 2.0, 1.0;
    EXPECT_THROW(RankTwoMetricFamily::constant(bad)(0.0), DomainError);
    bad << 1.0, 0.5, 0.0, 1.0;
    EXPECT_THROW(RankTwoMetricFamily::constant(bad)(0.0), NonHermitianError);
    EXPECT_THROW(RankTwoMetricFamily::constant(diag2(1.0, 1e-9))(0.0), IllConditionedError);
}

TEST(ProjBundle, InducedWeightExamples) {
    const auto id = induced_weight(RankTwoMetricFamily::constant(CMat::Identity(2, 2)), 3);
    const auto d41 = induced_weight(RankTwoMetricFamily::constant(diag2(4.0, 1.0)), 2);
    const auto conf = induced_weight(RankTwoMetricFamily::conformal(1.0), 4);
    const auto t = base_point({0.3, -0.1});
    for (cplx w : {cplx(0.0), cplx(0.5, 0.2), cplx(-2.0, 1.0)}) {
        EXPECT_NEAR(id->value(t, w), 3.0 * std::log(1.0 + std::norm(w)), 1e-13);
        EXPECT_NEAR(d41->value(t, w), 2.0 * std::log(0.25 + std::norm(w)), 1e-13);
        EXPECT_NEAR(conf->value(t, w), 4.0 * (std::log(1.0 + std::norm(w)) + std::norm(t(0))), 1e-12);
    }
}

TEST(ProjBundle, UniversalConstant) {
    const double c2 = universal_constant_c2(p1_rule());
    EXPECT_NEAR(c2, kPi, 1e-10);
    const CMat h = e_bundle_gram(RankTwoMetricFamily::constant(diag2(4.0, 1.0)), 0.0, 2, p1_rule());
    EXPECT_NEAR(h(0, 0).real(), 4.0 * c2, 1e-8);
    const CMat h3 = e_bundle_gram(RankTwoMetricFamily::constant(CMat::Identity(2, 2)), 0.0, 3, p1_rule());
    EXPECT_LT((h3 - h3(0, 0) * CMat::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ProjBundle, GramEquivariance) {
    const auto fam = RankTwoMetricFamily::diagonal(1.0, 2.0);
    CMat U(2, 2);
    U << cplx(1.0, 0.2), cplx(0.3, 0.0), cplx(-0.1, 0.4), cplx(0.9, 0.0);
    const auto famU = fam.transformed(U);
    const double det_sq = std::norm(U.determinant());
    for (int l : {2, 3, 4}) {
        const cplx t(0.2, 0.1);
        const CMat M = sym_power_action(U.conjugate(), l - 2);
        const CMat expected = det_sq * M.adjoint() * e_bundle_gram(fam, t, l, p1_rule()) * M;
        EXPECT_LT((e_bundle_gram(famU, t, l, p1_rule()) - expected).cwiseAbs().maxCoeff(), 1e-12) << l;
    }
}

TEST(ProjBundle, SymPowerAction) {
    CMat B(2, 2);
    B << 1.0, 2.0, 3.0, 4.0;
    EXPECT_EQ(sym_power_action(B, 0), CMat::Identity(1, 1));
    // (a + cw)(b + dw) columns for degree 1: ((1,w)B)₀ = 1 + 3w, ((1,w)B)₁ = 2 + 4w
    const CMat m1 = sym_power_action(B, 1);
    EXPECT_EQ(m1(0, 0), cplx(1.0));
    EXPECT_EQ(m1(1, 0), cplx(3.0));
    EXPECT_EQ(m1(0, 1), cplx(2.0));
    EXPECT_EQ(m1(1, 1), cplx(4.0));
    EXPECT_LT((sym_power_action(B, 3) * sym_power_action(B.inverse(), 3) - CMat::Identity(4, 4)).cwiseAbs().maxCoeff(),
              1e-10);
}

TEST(ProjBundle, DeterminantIdentity) {
    for (const auto& fam : {RankTwoMetricFamily::conformal(1.0), RankTwoMetricFamily::diagonal(1.0, 2.0),
                            RankTwoMetricFamily::unimodular()}) {
        EXPECT_LE(det_identity_residual(fam, kGrid, p1_rule()), 1e-6) << fam.id();
    }
}

TEST(ProjBundle, ConformalSymmetricPowers) {
    const auto fam = RankTwoMetricFamily::conformal(1.0);
    for (int m : {0, 1, 2}) {
        const auto r = theorem_71_check(fam, kGrid, m, p1_rule());
        EXPECT_NEAR(r.min_nakano_eig, 2.0 + m, 1e-4) << m;
        EXPECT_TRUE(r.strictly_positive);
        EXPECT_NEAR(r.hypothesis_min, 1.0, 1e-4);
    }
}

TEST(ProjBundle, HypothesisScalesWithCurvature) {
    const double h1 = theorem_71_check(RankTwoMetricFamily::diagonal(1.0, 2.0), kGrid, 0, p1_rule()).hypothesis_min;
    const double h3 = theorem_71_check(RankTwoMetricFamily::diagonal(3.0, 6.0), kGrid, 0, p1_rule()).hypothesis_min;
    EXPECT_NEAR(h1, 1.0, 1e-4);
    EXPECT_NEAR(h3, 3.0 * h1, 1e-3);
}

TEST(ProjBundle, NegativeHypothesisIsRejected) {
    EXPECT_THROW(theorem_71_check(RankTwoMetricFamily::unimodular(), kGrid, 1, p1_rule()), HypothesisError);
}

TEST(ProjBundle, FlatFamilyIsFlagged) {
    const auto r = theorem_71_check(RankTwoMetricFamily::constant(diag2(2.0, 1.0)), kGrid, 1, p1_rule());
    EXPECT_FALSE(r.strictly_positive);
    EXPECT_FALSE(r.diagnostic.empty());
    EXPECT_NEAR(r.min_nakano_eig, 0.0, 1e-5);
}

TEST(ProjBundle, FromJson) {
    const auto fam = RankTwoMetricFamily::from_json({{"kind", "diagonal"}, {"a", 1.0}, {"b", 2.0}});
    EXPECT_LT((fam(0.5) - RankTwoMetricFamily::diagonal(1.0, 2.0)(0.5)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_THROW(RankTwoMetricFamily::from_json({{"kind", "nope"}}), Error);
}
