/**
 * @file bundle.hpp
 * @brief Gram fields t ↦ h(t), Chern curvature, Nakano/Griffiths forms and the curvature identities.
 *
 * Curvature in a holomorphic frame:
 *
 *   Θ_{jk} = −h⁻¹ ∂̄_k∂_j h + h⁻¹ (∂̄_k h) h⁻¹ (∂_j h)
 *
 * so that a line bundle with h = e^{−φ} has Θ₁₁ = φ_{11̄}. The Nakano form of a
 * tuple (u_1..u_m) is Σ_{jk} u_k^H h Θ_{jk} u_j.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "dimlab/bergman.hpp"

namespace dimlab {

/// h and its first/mixed second t-derivatives at a point.
struct GramJet {
    CMat h;
    std::vector<CMat> dh;                ///< ∂_j h
    std::vector<std::vector<CMat>> ddh;  ///< ddh[j][k] = ∂̄_k ∂_j h
};

/// FD jet of a matrix-valued function of t ∈ ℂ^m (real-coordinate central differences).
GramJet fd_gram_jet(const std::function<CMat(const BasePoint&)>& h, const BasePoint& t, const FdOptions& fd);

class GramField {
public:
    virtual ~GramField() = default;
    [[nodiscard]] virtual int base_dim() const = 0;
    [[nodiscard]] virtual int dim() const = 0;
    [[nodiscard]] virtual CMat gram(const BasePoint& t) const = 0;
    /// Default: finite differences of gram().
    [[nodiscard]] virtual GramJet jet(const BasePoint& t) const;
    [[nodiscard]] const FdOptions& fd() const { return fd_; }
    void set_fd(const FdOptions& fd) { fd_ = fd; }

protected:
    FdOptions fd_{};
};

using GramFieldPtr = std::shared_ptr<const GramField>;

enum class GramDerivativeMode {
    finite_difference,  ///< FD of h(t)
    analytic_weight,    ///< ∂_j h = −∫φ_j e_β ē_α e^{−φ}, ∂̄_k∂_j h = ∫(φ_jφ_k̄ − φ_{jk̄}) e_β ē_α e^{−φ}
};

/// Gram field of a basis under a weight family, integrated with a fixed rule.
class L2GramField final : public GramField {
public:
    L2GramField(Basis basis, WeightPtr phi, QuadratureRule rule,
                GramDerivativeMode mode = GramDerivativeMode::analytic_weight,
                DerivativeMode weight_mode = DerivativeMode::analytic, FdOptions fd = {});
    /// Arbitrary frame given by its node samples (nodes × d); basis() is unavailable.
    L2GramField(CMat samples, WeightPtr phi, QuadratureRule rule,
                GramDerivativeMode mode = GramDerivativeMode::analytic_weight,
                DerivativeMode weight_mode = DerivativeMode::analytic, FdOptions fd = {});

    [[nodiscard]] int base_dim() const override { return phi_->base_dim(); }
    [[nodiscard]] int dim() const override { return static_cast<int>(samples_.cols()); }
    [[nodiscard]] CMat gram(const BasePoint& t) const override;
    [[nodiscard]] GramJet jet(const BasePoint& t) const override;

    [[nodiscard]] const Basis& basis() const;
    [[nodiscard]] const WeightFamily& weight() const { return *phi_; }
    [[nodiscard]] const WeightPtr& weight_ptr() const { return phi_; }
    [[nodiscard]] const QuadratureRule& rule() const { return rule_; }
    [[nodiscard]] const CMat& samples() const { return samples_; }
    [[nodiscard]] GramDerivativeMode mode() const { return mode_; }

private:
    std::optional<Basis> basis_;
    WeightPtr phi_;
    QuadratureRule rule_;
    GramDerivativeMode mode_;
    DerivativeMode weight_mode_;
    CMat samples_;
};

/// Gram field from a callable; jets by finite differences.
class CallableGramField final : public GramField {
public:
    CallableGramField(int base_dim, int dim, std::function<CMat(const BasePoint&)> fn, FdOptions fd = {});
    [[nodiscard]] int base_dim() const override { return base_dim_; }
    [[nodiscard]] int dim() const override { return dim_; }
    [[nodiscard]] CMat gram(const BasePoint& t) const override { return fn_(t); }

private:
    int base_dim_;
    int dim_;
    std::function<CMat(const BasePoint&)> fn_;
};

/// Constant change of frame: h'(t) = A^H h(t) A.
class FrameChangedField final : public GramField {
public:
    FrameChangedField(GramFieldPtr base, CMat A);
    [[nodiscard]] int base_dim() const override { return base_->base_dim(); }
    [[nodiscard]] int dim() const override { return base_->dim(); }
    [[nodiscard]] CMat gram(const BasePoint& t) const override;
    [[nodiscard]] GramJet jet(const BasePoint& t) const override;

private:
    GramFieldPtr base_;
    CMat A_;
};

/**
 * Dual bundle metric h*(t) = (h(t)⁻¹)ᵀ in the dual frame.
 *
 * With `analytic_jet` the jet is derived from the base jet; otherwise h* is
 * differenced directly.
 */
class DualGramField final : public GramField {
public:
    explicit DualGramField(GramFieldPtr base, bool analytic_jet = true);
    [[nodiscard]] int base_dim() const override { return base_->base_dim(); }
    [[nodiscard]] int dim() const override { return base_->dim(); }
    [[nodiscard]] CMat gram(const BasePoint& t) const override;
    [[nodiscard]] GramJet jet(const BasePoint& t) const override;

private:
    GramFieldPtr base_;
    bool analytic_jet_;
};

struct CurvatureTensor {
    int m = 0;
    CMat h;
    std::vector<CMat> theta;  ///< Θ_{jk} stored at j·m + k

    [[nodiscard]] const CMat& at(int j, int k) const { return theta[static_cast<std::size_t>(j * m + k)]; }
    [[nodiscard]] int dim() const { return static_cast<int>(h.rows()); }
};

CurvatureTensor curvature_from_jet(const GramJet& jet);
CurvatureTensor chern_curvature(const GramField& field, const BasePoint& t);

/// max_{jk} ‖(hΘ_{jk})^H − hΘ_{kj}‖ (entrywise) in the frame normalized by diag(h).
double curvature_hermitian_defect(const CurvatureTensor& curv);

/// The (m·d)×(m·d) matrix Q with block (k, j) = hΘ_{jk}, so that U^H Q U is the Nakano form.
CMat nakano_matrix(const CurvatureTensor& curv);

/// Minimum generalized eigenvalue of the Nakano form relative to diag(h, …, h).
double nakano_min_eig(const CurvatureTensor& curv);

/// Σ_{jk} u_k^H h Θ_{jk} u_j for the tuple given as the columns of U (d × m).
cplx nakano_form(const CurvatureTensor& curv, const CMat& U);

/// Minimum over a direction grid of the minimum generalized eigenvalue of Σ v_j v̄_k hΘ_{jk}.
double griffiths_min(const CurvatureTensor& curv, int grid_size = 24);

/// Frame-invariant size max_{jk} ‖L^H Θ_{jk} L^{−H}‖₂, h = L L^H.
double curvature_norm(const CurvatureTensor& curv);

/// max over random tuples of |Σ(Θ*_{jk}ξ_j, ξ_k) + Σ(Θ_{jk}u_k, u_j)|, u_j = h⁻¹ conj(ξ_j), Σ‖ξ_j‖² = 1.
double dual_curvature_residual(const GramFieldPtr& field, const BasePoint& t, int n_tuples = 8,
                               std::uint64_t seed = 20240917, bool analytic_dual_jet = true);

/**
 * Minimum over the grid of the smallest eigenvalue of the t-Hessian of log(ξ(t)^H h*(t) ξ(t)),
 * where ξ(t) is a holomorphic section of the dual bundle (coefficients in the dual frame).
 * Nakano/Griffiths positivity of E makes E* Griffiths negative, so this is ≥ 0.
 */
double log_norm_psh_residual(const GramField& field, const std::function<CVec(const BasePoint&)>& section,
                             const std::vector<BasePoint>& grid);

/**
 * |Σ_{jk} ∂_j∂̄_k (u_k^H h u_j) + Σ_{jk} u_k^H hΘ_{jk} u_j| at t0 for the normal tuple
 * u_j(t) = u0_j − Σ_i (t_i − t0_i)(h⁻¹∂_i h)(t0) u0_j.
 */
double normal_tuple_second_derivative_residual(const GramField& field, const BasePoint& t0, const CMat& U0);

// ------------------------------------------------------ F-model (ambient space)

/**
 * Ambient space F = span{z^a z̄^b : a ≤ N, b ≤ N_b} of the plane model, in a
 * Laguerre frame that is orthonormal for the Gaussian |z|² weight. The first
 * N+1 frame elements are z^a / sqrt(π a!), so E = span{z^a} is a coordinate subframe.
 */
class FModel {
public:
    FModel(int cutoff, int anti_cutoff);
    [[nodiscard]] int dim() const { return static_cast<int>(labels_.size()); }
    [[nodiscard]] int cutoff() const { return cutoff_; }
    [[nodiscard]] int anti_cutoff() const { return anti_cutoff_; }
    /// nodes × dim matrix of frame values.
    [[nodiscard]] CMat samples(const QuadratureRule& rule) const;
    /// E-coefficients (monomials z^a) to F-frame coefficients.
    [[nodiscard]] CMat embed_monomials() const;

private:
    struct Label {
        int m;  // angular frequency (holomorphic minus antiholomorphic degree)
        int k;  // Laguerre index
    };
    int cutoff_;
    int anti_cutoff_;
    std::vector<Label> labels_;
};

/// Gram field of the F-model frame under a plane weight (analytic-weight jets).
std::shared_ptr<L2GramField> fmodel_gram_field(const FModel& model, WeightPtr phi, const QuadratureRule& rule);

/**
 * |ΣΘ^F-form − ΣS-form − ΣΘ^E-form| for the tuple U (columns, monomial coefficients),
 * with Θ^F, Θ^E from Chern curvature of the respective Gram fields and S the second
 * fundamental form taken inside F.
 */
double subbundle_formula_residual(const WeightPtr& phi, int cutoff, int anti_cutoff, const BasePoint& t,
                                  const CMat& U, const QuadratureRule& rule);

/// Σ(Θ^E_{jk}u_j, u_k) − ∫ Σ D_{jk} u_j ū_k e^{−φ} dA.
double hormander_bound_margin(const L2GramField& field, const BasePoint& t, const CMat& U);

/// The (m·d)×(m·d) matrix M with vec(U)^H M vec(U) = hormander_bound_margin(field, t, U).
CMat hormander_bound_matrix(const L2GramField& field, const BasePoint& t);

struct DegeneracyRecord {
    double min_curv_eig = 0.0;
    double curvature_norm = 0.0;
    double dbar_v_residual = 0.0;
    double max_abs_v = 0.0;
};

/// V = φ_{tz̄}/φ_{zz̄} on the nodes, max |∂_z̄ V| by FD, and the curvature at t.
DegeneracyRecord degeneracy_diagnostics(const L2GramField& field, const BasePoint& t, double fd_step = 1e-4);

}  // namespace dimlab
