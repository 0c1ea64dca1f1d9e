/**
 * @file linalg.hpp
 * @brief Small dense Hermitian helpers on top of Eigen.
 */

#pragma once

#include "dimlab/types.hpp"

namespace dimlab {

/// (A + A^H)/2
CMat hermitian_part(const CMat& a);

/// Relative Hermitian defect ‖A − A^H‖_max / max(‖A‖_max, floor).
double hermitian_defect(const CMat& a, double floor = 1e-300);

/// Solve h x = b for Hermitian positive-definite h, with diagonal equilibration.
CMat solve_hpd(const CMat& h, const CMat& b);
CVec solve_hpd(const CMat& h, const CVec& b);

/// Minimum-norm solve for Hermitian positive-semidefinite K (eigenvalues below rel_cut·max dropped).
CVec solve_psd(const CMat& k, const CVec& b, double rel_cut = 1e-13);

double min_eigenvalue(const CMat& a);

/// Smallest λ with det(A − λB) = 0, for Hermitian A and Hermitian positive-definite B.
double min_generalized_eigenvalue(const CMat& a, const CMat& b);

/// Hermitian square root and inverse square root of a positive-definite matrix.
CMat hpd_sqrt(const CMat& h);
CMat hpd_inv_sqrt(const CMat& h);

/// Largest singular value.
double spectral_norm(const CMat& a);

}  // namespace dimlab
