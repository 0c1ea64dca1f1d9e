/**
 * @file bergman.hpp
 * @brief Weighted Bergman bases, Gram matrices, kernels, projections and Toeplitz matrices.
 *
 * Conventions used throughout the library:
 *
 *   - A section Σ u_α e_α is stored as its coefficient vector u ∈ ℂ^d.
 *   - The Gram matrix is h_{αβ} = ∫ e_β ē_α e^{−φ} dA, so that (u, v) = v^H h u.
 *   - On ℙ¹ the chart density of [u, u] is |u|² e^{−φ} dA, where the weight φ
 *     carries the l·log(1+|z|²) term itself. With φ = l·log(1+|z|²) this gives
 *     ∫|z|^{2k}(1+|z|²)^{−l} dA = π k!(l−2−k)!/(l−1)!.
 */

#pragma once

#include <functional>
#include <vector>

#include "dimlab/quadrature.hpp"
#include "dimlab/weights.hpp"

namespace dimlab {

class Basis {
public:
    enum class Kind { plane_monomials, p1_sections };

    /// z^k for k = 0..N.
    static Basis plane(int cutoff);
    /// z^k for k = 0..l−2: sections of O(l) ⊗ K in the affine chart.
    static Basis p1(int degree);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] int dim() const { return kind_ == Kind::plane_monomials ? degree_ + 1 : degree_ - 1; }
    [[nodiscard]] cplx eval(int alpha, cplx z) const;
    [[nodiscard]] cplx eval_dz(int alpha, cplx z) const;
    [[nodiscard]] bool is_p1() const { return kind_ == Kind::p1_sections; }

private:
    Basis(Kind kind, int degree) : kind_(kind), degree_(degree) {}
    Kind kind_;
    int degree_;
};

/// nodes × d matrix of basis values e_α(z_i).
CMat basis_samples(const Basis& basis, const QuadratureRule& rule);

/// Throws PreconditionError unless the rule kind matches the basis kind.
void require_rule_matches(const Basis& basis, const QuadratureRule& rule);

/// Quadrature weights times e^{−φ(t, z_i)}; throws on non-finite values.
RVec weighted_measure(const WeightFamily& phi, const BasePoint& t, const QuadratureRule& rule);

/// B^H diag(μ) B, Hermitian-symmetrized.
CMat gram_from_samples(const CMat& samples, const RVec& measure);

/**
 * Validate a Gram matrix: finite, Hermitian, positive definite and with a
 * condition number (after symmetric diagonal equilibration) of at most 1e12.
 */
void check_gram(const CMat& h, double max_condition = 1e12);

/// Condition number of D^{−1/2} h D^{−1/2}, D = diag(h).
double equilibrated_condition(const CMat& h);

CMat gram(const Basis& basis, const WeightFamily& phi, const BasePoint& t, const QuadratureRule& rule);

/// K(z, w) = Σ e_α(z) (h⁻¹)_{αβ} conj(e_β(w)).
cplx kernel_eval(const Basis& basis, const CMat& h, cplx z, cplx w);

struct KernelPoint {
    BasePoint t;
    cplx z;
};

/**
 * Minimum eigenvalue of the FD joint Hessian of (t, z) ↦ log K_t(z, z) over the grid.
 * Throws DomainError if the kernel is not positive at a stencil point.
 */
double log_kernel_psh_report(const WeightFamily& phi, const Basis& basis, const QuadratureRule& rule,
                             const std::vector<KernelPoint>& grid, const FdOptions& fd = {});

/// Coefficients c = h⁻¹ b, b_α = ∫ m ē_α e^{−φ}, of the projection of m onto span{e_α}.
CVec project_holomorphic(const Basis& basis, const CMat& h, const WeightFamily& phi, const BasePoint& t,
                         const QuadratureRule& rule, const std::vector<cplx>& m_samples);

/**
 * S_{jk} = ⟨π_⊥(φ_j u_j), π_⊥(φ_k u_k)⟩ for the tuple given as the columns of U (d × m).
 *
 * With `ambient_samples` (nodes × d_F, a frame of a finite ambient space containing the
 * basis), φ_j u_j is first projected onto that space, so π_⊥ is taken inside it.
 */
CMat second_fundamental_form(const Basis& basis, const WeightFamily& phi, const BasePoint& t,
                             const QuadratureRule& rule, const CMat& U,
                             DerivativeMode mode = DerivativeMode::analytic, const FdOptions& fd = {},
                             const CMat* ambient_samples = nullptr);

/// T_{αβ} = ∫ χ e_β ē_α e^{−φ}; same index convention as the Gram matrix.
CMat toeplitz(const Basis& basis, const WeightFamily& phi, const BasePoint& t, const QuadratureRule& rule,
              const std::vector<double>& chi_samples);

// --------------------------------------------------------- Hörmander witness

struct HormanderWitness {
    double norm_mu_sq = 0.0;
    double norm_f_sq = 0.0;
    double orth_residual = 0.0;
};

/**
 * μ = ∂_zγ − γ φ_z and f = γ·φ_{zz̄} for a fiber weight on ℙ¹ (evaluated at base point t).
 *
 * Returns ‖μ‖² = ∫|μ|²e^{−φ}, ‖f‖² = ∫|γ|²φ_{zz̄}e^{−φ} and max_α |⟨μ, z^α⟩|, α ≤ l−2.
 */
HormanderWitness hormander_equality_witness(int degree, const WeightFamily& phi, const BasePoint& t,
                                            const std::vector<cplx>& gamma, const std::vector<cplx>& gamma_dz,
                                            const QuadratureRule& rule,
                                            DerivativeMode mode = DerivativeMode::analytic);

struct MinimalSolution {
    double norm_mu_sq = 0.0;   ///< ‖μ_min‖² of the Galerkin minimal solution
    double norm_f_sq = 0.0;    ///< ‖f‖² of the right-hand side
    int space_dim = 0;
};

/**
 * Minimal L² solution of ∂̄μ = γ·φ_{zz̄} dz̄∧dz on ℙ¹ for a possibly non-holomorphic γ.
 *
 * μ is sought as ∂^φ v over smooth sections v = z^a z̄^b (1+|z|²)^{−b}, b ≤ max_antidegree,
 * a ≤ l + b. The Galerkin (Ritz) value is a lower bound for ‖μ_min‖² that increases
 * with max_antidegree.
 */
MinimalSolution minimal_dbar_solution(int degree, const WeightFamily& phi, const BasePoint& t,
                                      const std::vector<cplx>& gamma, const QuadratureRule& rule,
                                      int max_antidegree, DerivativeMode mode = DerivativeMode::analytic);

// ---------------------------------------------------- minimal extension ratio

struct ExtensionResult {
    double ratio = 0.0;
    int t_poly_cutoff = 0;
};

/**
 * min ∫_U∫[ũ, ũ] over ũ(t, z) = Σ_{p ≤ cutoff} t^p v_p(z) with ũ(0, ·) = u, U the unit disk.
 *
 * u is rescaled so that u^H h(0) u = 1. t_rule must be a disk rule on U.
 */
ExtensionResult minimal_extension_ratio(const WeightFamily& phi, const Basis& basis, const CVec& u,
                                        int t_poly_cutoff, const QuadratureRule& t_rule,
                                        const QuadratureRule& fiber_rule);

}  // namespace dimlab
