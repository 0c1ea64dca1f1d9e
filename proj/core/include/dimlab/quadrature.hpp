/**
 * @file quadrature.hpp
 * @brief Polar tensor quadrature rules on disks, truncated Gaussian planes and ℙ¹.
 *
 * All rules integrate against Lebesgue area dA = dx dy in the (affine) z-chart.
 * The radial factor is Gauss–Legendre after a substitution that makes the
 * model integrands polynomial; the angular factor is the uniform trapezoid
 * rule, which is exact for trigonometric polynomials of degree < n_angular.
 *
 *   disk(R):             u = r² ∈ (0, R²)
 *   gaussian_plane(s,R): u = r² ∈ (0, R²), truncation bound ≈ e^{-R²/s}
 *   ℙ¹ chart:            s = |z|²/(1+|z|²) ∈ (0, 1), so dA_FS = ½ ds dθ
 */

#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dimlab/types.hpp"

namespace dimlab {

struct DiskDomain {
    double radius = 1.0;
};

struct GaussianPlaneDomain {
    double envelope_scale = 1.0;
    double cutoff_radius = 12.0;
};

struct P1Chart {};

struct PlaneDomainSpec {
    std::variant<DiskDomain, GaussianPlaneDomain> kind;

    static PlaneDomainSpec disk(double radius) { return {DiskDomain{radius}}; }
    static PlaneDomainSpec gaussian_plane(double envelope_scale, double cutoff_radius) {
        return {GaussianPlaneDomain{envelope_scale, cutoff_radius}};
    }
};

using DomainTag = std::variant<DiskDomain, GaussianPlaneDomain, P1Chart>;

/// Immutable node/weight table. Safe to share between threads.
class QuadratureRule {
public:
    QuadratureRule(std::vector<cplx> nodes, std::vector<double> weights, DomainTag domain,
                   int n_radial, int n_angular, double truncation_bound);

    [[nodiscard]] std::size_t size() const { return nodes_.size(); }
    [[nodiscard]] const std::vector<cplx>& nodes() const { return nodes_; }
    [[nodiscard]] const std::vector<double>& weights() const { return weights_; }
    [[nodiscard]] const DomainTag& domain() const { return domain_; }
    [[nodiscard]] int n_radial() const { return n_radial_; }
    [[nodiscard]] int n_angular() const { return n_angular_; }
    [[nodiscard]] bool is_p1() const { return std::holds_alternative<P1Chart>(domain_); }

    /// Upper bound on the relative mass lost by truncating the plane (0 for disk/ℙ¹).
    [[nodiscard]] double truncation_bound() const { return truncation_bound_; }

    /// Short human-readable description, e.g. "gaussian_plane(scale=1,R=12) 160x96".
    [[nodiscard]] std::string describe() const;

private:
    std::vector<cplx> nodes_;
    std::vector<double> weights_;
    DomainTag domain_;
    int n_radial_;
    int n_angular_;
    double truncation_bound_;
};

/// Gauss–Legendre nodes and weights on (0, 1), ascending.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLegendre gauss_legendre_unit(int n);

/**
 * Build a polar rule on a disk or a truncated Gaussian plane.
 *
 * @param target_degree when set for a Gaussian plane, reject cutoffs with
 *        R² < scale·(2N + 10·√(2N)), which cannot hold monomials of degree N.
 */
QuadratureRule build_plane_rule(const PlaneDomainSpec& spec, int n_radial, int n_angular,
                                std::optional<int> target_degree = std::nullopt);

/// Rule on ℙ¹ in the affine chart, exact for z^a z̄^b/(1+|z|²)^d with a,b < n_radial, d ≤ 2·n_radial.
QuadratureRule build_p1_rule(int n_radial, int n_angular);

/// Σ wᵢ·fᵢ with pairwise summation in fixed index order.
cplx integrate(const QuadratureRule& rule, std::span<const cplx> samples);
double integrate(const QuadratureRule& rule, std::span<const double> samples);

/// Pairwise (cascade) sum in fixed index order; deterministic for a fixed input.
cplx pairwise_sum(std::span<const cplx> values);
double pairwise_sum(std::span<const double> values);

}  // namespace dimlab
