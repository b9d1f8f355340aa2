#pragma once

#include <vector>

#include "foguel/matrix.hpp"

namespace foguel {

/// A = U · diag(sigma) · V*, with U (rows×rows) and V (cols×cols) unitary and
/// sigma nonincreasing of length min(rows, cols).
struct SvdResult {
  ComplexMatrix u;
  std::vector<double> sigma;
  ComplexMatrix v;
};

/// A = U · diag(sigma) · Uᵀ for complex symmetric A. Column u_k solves the
/// antilinear eigenproblem A·conj(u_k) = sigma_k · u_k.
struct TakagiResult {
  ComplexMatrix u;
  std::vector<double> sigma;
};

/// Full singular value decomposition. Throws ConvergenceError when the
/// underlying iteration does not converge, DimensionError on non-finite input.
SvdResult svd(const ComplexMatrix& a);

/// Singular values only, nonincreasing. Much cheaper than `svd` for large inputs.
std::vector<double> singular_values(const ComplexMatrix& a);

/// Largest singular value (spectral norm).
double operator_norm(const ComplexMatrix& a);

/// Tolerances for Takagi factorization.
struct TakagiOptions {
  /// Input must satisfy ‖A − Aᵀ‖ ≤ symmetry_tol · max(1, ‖A‖).
  double symmetry_tol = 1e-12;
  /// Singular values within cluster_tol · max(1, σ_max) are re-aligned as one block.
  double cluster_tol = 1e-8;
};

TakagiResult takagi(const ComplexMatrix& a, const TakagiOptions& options = {});

/// U · diag(sigma) · V*.
ComplexMatrix reconstruct(const SvdResult& f);
/// U · diag(sigma) · Uᵀ.
ComplexMatrix reconstruct(const TakagiResult& f);

/// ‖Q*Q − I‖ in spectral norm.
double unitarity_defect(const ComplexMatrix& q);

/// ‖A − Aᵀ‖ ≤ tol · max(1, ‖A‖) in spectral norm. Shared by takagi's
/// precondition and operator-level symmetry checks.
bool is_complex_symmetric(const ComplexMatrix& a, double tol);

}  // namespace foguel
