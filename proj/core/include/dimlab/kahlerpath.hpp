/**
 * @file kahlerpath.hpp
 * @brief Paths of fiber metrics φ = φ₀ + ψ(t, ·), their geodesic curvature and the Toeplitz lower bound.
 *
 *   C(ψ) = ψ_{tt̄} − |ψ_{tz̄}|²/φ_{zz̄}
 *
 * Θ^E ≥ T_{C(ψ)} as Hermitian forms on the fiber section space.
 */

#pragma once

#include <functional>
#include <vector>

#include "dimlab/bundle.hpp"
#include "dimlab/families.hpp"

namespace dimlab {

/// φ₀ = family(0, ·) and ψ = scale·(family − φ₀) over a one-dimensional base.
struct PathSpec {
    WeightPtr family;
    Basis basis;
    QuadratureRule rule;
    double scale = 1.0;
};

/// Throws unless the base is one-dimensional, the rule matches the basis and φ₀ is fiber-strict on the nodes.
void validate_path(const PathSpec& path);

/// φ₀ + ψ.
WeightPtr path_weight(const PathSpec& path);
/// ψ alone.
WeightPtr path_perturbation(const PathSpec& path);

double geodesic_curvature(const PathSpec& path, cplx t, cplx z, DerivativeMode mode = DerivativeMode::analytic,
                          const FdOptions& fd = {});

/// C(ψ)(t, ·) on the rule nodes.
std::vector<double> geodesic_curvature_samples(const PathSpec& path, cplx t,
                                               DerivativeMode mode = DerivativeMode::analytic);

struct RealPathIdentity {
    double four_c = 0.0;  ///< 4·C(ψ)
    double rhs = 0.0;     ///< ψ̈ − |∂_z̄ψ̇|²/φ_{zz̄}
    [[nodiscard]] double residual() const { return std::abs(four_c - rhs); }
};

/**
 * Both sides of 4C = ψ̈ − |∂_z̄ψ̇|²_φ at t = x for a path depending on Re t only.
 * Dots are x-derivatives taken by central differences of the first-order table.
 */
RealPathIdentity real_path_identity(const PathSpec& path, double x, cplx z, const FdOptions& fd = {});

/// Minimum generalized eigenvalue of hΘ₁₁ − T_{C(ψ)} relative to h.
double toeplitz_bound_margin(const PathSpec& path, cplx t, DerivativeMode mode = DerivativeMode::analytic);

struct QuantizationRow {
    int degree = 0;
    double nakano_min_eig = 0.0;
    double margin = 0.0;
    double min_c = 0.0;
};

/// One row per degree; each column is the minimum over the t-grid.
std::vector<QuantizationRow> quantization_report(const std::function<PathSpec(int)>& path_for_degree,
                                                 const std::vector<cplx>& t_grid, const std::vector<int>& degrees,
                                                 DerivativeMode mode = DerivativeMode::analytic);

}  // namespace dimlab
