#pragma once

#include <vector>

#include "magcouple/core/types.hpp"

namespace magcouple {

/// Effective non-Hermitian coupling Hamiltonian.
///
/// Diagonal: omega_j - i (alpha_j + beta_j). Off-diagonal: g_jk - i sqrt(beta_j beta_k).
/// The result is complex symmetric (equal to its transpose), not Hermitian.
ComplexMatrix build_coupling_hamiltonian(const HybridSystem& system);

/// Stripline drive vector B = sqrt(2) * (sqrt(beta_j))_j.
ComplexVector drive_vector(const HybridSystem& system);

// Solves M x = B with M = i (omega I - H) by partial-pivot LU. The solution
// is kept because derivatives of S21 with respect to model parameters are
// bilinear in x.
struct Response {
    cplx s21;
    ComplexVector x;
};

// Solves with a condition estimate above this are reported as singular.
inline constexpr double kSingularCondition = 1e14;

Response solve_response(const HybridSystem& system, double omega);

/// Complex transmission S21 = B^T M^-1 B (offset convention: p_out/p_in - 1).
cplx s21(const HybridSystem& system, double omega);

/// Eigenvalues of the coupling Hamiltonian, sorted by real part then imaginary part.
std::vector<cplx> eigenbranches(const HybridSystem& system);

}  // namespace magcouple
