/**
 * @file projbundle.hpp
 * @brief Rank-two metric families on V, the induced O(l) weights on ℙ(V*) and the bundles E(l).
 *
 * In the chart x = (1, w) the fiber weight of O(l) is l·log(x G x^H) with G = (h_V⁻¹)ᵀ,
 * and E(l) has the chart basis {w^k}, k ≤ l − 2.
 */

#pragma once

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dimlab/bundle.hpp"

namespace dimlab {

class RankTwoMetricFamily {
public:
    using Fn = std::function<CMat(cplx)>;

    RankTwoMetricFamily(std::string id, Fn fn, nlohmann::json params = nlohmann::json::object());

    /// e^{−c|t|²}·I
    static RankTwoMetricFamily conformal(double c);
    /// diag(e^{−a|t|²}, e^{−b|t|²})
    static RankTwoMetricFamily diagonal(double a, double b);
    /// A(t)^H A(t), A(t) = [[1, t], [0, 1]]
    static RankTwoMetricFamily unimodular();
    /// t-independent h₀
    static RankTwoMetricFamily constant(const CMat& h0);
    /// U^H h_V(t) U for a constant invertible U.
    [[nodiscard]] RankTwoMetricFamily transformed(const CMat& U) const;

    static RankTwoMetricFamily from_json(const nlohmann::json& spec);

    /// h_V(t); throws NonHermitianError, DomainError (not PD) or IllConditionedError (cond > 1e8).
    [[nodiscard]] CMat operator()(cplx t) const;
    [[nodiscard]] const std::string& id() const { return id_; }
    [[nodiscard]] const nlohmann::json& params() const { return params_; }

private:
    std::string id_;
    Fn fn_;
    nlohmann::json params_;
};

/// Fiber weight l·log(x G(t) x^H) on the ℙ¹ chart; derivatives by finite differences.
class ProjInducedWeight final : public WeightFamily {
public:
    ProjInducedWeight(RankTwoMetricFamily family, int degree);

    [[nodiscard]] int base_dim() const override { return 1; }
    [[nodiscard]] double value(const BasePoint& t, cplx w) const override;
    [[nodiscard]] std::string family_id() const override { return "proj_induced(" + family_.id() + ")"; }
    [[nodiscard]] nlohmann::json params() const override;
    [[nodiscard]] int degree() const { return degree_; }

private:
    RankTwoMetricFamily family_;
    int degree_;
};

std::shared_ptr<ProjInducedWeight> induced_weight(const RankTwoMetricFamily& family, int degree);

/// Gram matrix of E(l) at t.
CMat e_bundle_gram(const RankTwoMetricFamily& family, cplx t, int degree, const QuadratureRule& rule);

/// Gram field t ↦ h_{E(l)}(t); jets by finite differences of h.
std::shared_ptr<L2GramField> e_bundle_field(const RankTwoMetricFamily& family, int degree,
                                            const QuadratureRule& rule, FdOptions fd = {});

/// c₂: the E(2) Gram entry at h_V = I.
double universal_constant_c2(const QuadratureRule& rule);

/**
 * Coefficient matrix of the substitution x ↦ xB on homogeneous polynomials of the given degree:
 * column k holds the w-coefficients of ((1,w)B)₀^{d−k}·((1,w)B)₁^k.
 */
CMat sym_power_action(const CMat& B, int degree);

/// max over the grid of |h_{E(2)}(t)/(c₂·det h_V(t)) − 1|.
double det_identity_residual(const RankTwoMetricFamily& family, const std::vector<cplx>& t_grid,
                             const QuadratureRule& rule);

struct Theorem71Result {
    double min_nakano_eig = 0.0;     ///< min over the grid for E(2 + m)
    double hypothesis_min = 0.0;     ///< min over the grid of the Griffiths form of h_V^T (the Gram paired with the chart weight)
    bool strictly_positive = false;  ///< hypothesis holds strictly on the grid
    std::string diagnostic;
};

/**
 * Nakano positivity of E(2 + m) ≅ S^m(V) ⊗ det V.
 * Throws HypothesisError when h_V is Griffiths negative somewhere on the grid.
 */
Theorem71Result theorem_71_check(const RankTwoMetricFamily& family, const std::vector<cplx>& t_grid, int sym_power,
                                 const QuadratureRule& rule);

}  // namespace dimlab
