/**
 * @file weights.hpp
 * @brief Weight potentials φ(t, z), their Wirtinger derivatives, the D-matrix and psh diagnostics.
 *
 * Fibers are one-dimensional: z is a single complex coordinate (plane or the
 * affine chart of ℙ¹). The base variable t lives in ℂ^m with m ∈ {1, 2}.
 */

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dimlab/types.hpp"

namespace dimlab {

/// First and mixed second Wirtinger derivatives of φ at a point (t, z).
struct DerivativeSet {
    double value = 0.0;
    CVec grad_t;        ///< φ_j
    CMat hess_tt;       ///< φ_{jk̄}, Hermitian
    cplx grad_z{0.0, 0.0};  ///< φ_z
    double hess_zz = 0.0;   ///< φ_{zz̄}
    CVec mixed_tzbar;   ///< φ_{j z̄}
    CVec mixed_tz;      ///< φ_{j z}
};

enum class DerivativeMode {
    analytic,           ///< closed-form table; falls back to FD when a family has none
    finite_difference,  ///< always finite differences
};

struct FdOptions {
    double step = 1e-3;
    bool richardson = true;
};

class WeightFamily {
public:
    virtual ~WeightFamily() = default;

    [[nodiscard]] virtual int base_dim() const = 0;
    [[nodiscard]] virtual double value(const BasePoint& t, cplx z) const = 0;

    /// Closed-form derivative table, if the family has one.
    [[nodiscard]] virtual std::optional<DerivativeSet> analytic(const BasePoint& t, cplx z) const {
        (void)t;
        (void)z;
        return std::nullopt;
    }
    [[nodiscard]] virtual bool has_analytic() const { return false; }

    /// Stencil points outside this set raise DomainError.
    [[nodiscard]] virtual bool in_domain(const BasePoint& t, cplx z) const {
        (void)t;
        (void)z;
        return true;
    }

    [[nodiscard]] virtual std::string family_id() const = 0;
    [[nodiscard]] virtual nlohmann::json params() const { return nlohmann::json::object(); }
};

using WeightPtr = std::shared_ptr<const WeightFamily>;

/// Derivative table by central differences in the 2m+2 real coordinates of (t, z).
DerivativeSet wirtinger_fd(const WeightFamily& phi, const BasePoint& t, cplx z,
                           const FdOptions& fd = {});

/// Analytic table when available (and mode allows it), otherwise finite differences.
DerivativeSet wirtinger(const WeightFamily& phi, const BasePoint& t, cplx z,
                        DerivativeMode mode = DerivativeMode::analytic, const FdOptions& fd = {});

/// Joint complex Hessian [[φ_{jk̄}, φ_{jz̄}], [φ_{zk̄}, φ_{zz̄}]] of size (m+1)×(m+1).
CMat joint_hessian(const DerivativeSet& d);

/// D_{jk} = φ_{jk̄} − φ_{jz̄}·conj(φ_{kz̄})/φ_{zz̄}, symmetrized. Throws FiberDegeneracyError if φ_{zz̄} ≤ 0.
CMat d_matrix(const DerivativeSet& d);
CMat d_matrix(const WeightFamily& phi, const BasePoint& t, cplx z,
              DerivativeMode mode = DerivativeMode::analytic, const FdOptions& fd = {});

/// |D₁₁ − det(joint Hessian)/φ_{zz̄}| for m = 1.
double hessian_quotient_check(const WeightFamily& phi, cplx t, cplx z,
                              DerivativeMode mode = DerivativeMode::analytic,
                              const FdOptions& fd = {});

struct WeightPoint {
    BasePoint t;
    cplx z;
};

/// Minimum over the points of the smallest eigenvalue of the joint Hessian.
double psh_check(const WeightFamily& phi, const std::vector<WeightPoint>& points,
                 DerivativeMode mode = DerivativeMode::analytic, const FdOptions& fd = {});

/// Largest absolute entrywise difference between the analytic and FD tables.
double fd_analytic_discrepancy(const WeightFamily& phi, const BasePoint& t, cplx z,
                               const FdOptions& fd = {});

}  // namespace dimlab
