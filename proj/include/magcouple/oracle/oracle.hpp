#pragma once

#include <cstdint>
#include <vector>

#include "magcouple/core/types.hpp"
#include "magcouple/sweep/sweep.hpp"

namespace magcouple {

// Independent cross-checks for the forward model. Nothing here shares
// matrix-assembly or solve code with core/response.cpp.

/// S21 as (2/i) sum_j sqrt(beta_j) b_j / p_in, with the steady-state
/// amplitudes b from (omega - H) b = sqrt(beta) solved by full-pivot
/// Gaussian elimination.
cplx s21_sum_oracle(const HybridSystem& system, double omega);

/// Three-mode S21 through the adjugate: B^T adj(M) B / det(M).
cplx s21_cramer_oracle(const HybridSystem& system, double omega);

struct PassivityReport {
    double max_imag_eigenvalue = 0.0;
    double max_abs_one_plus_s21 = 0.0;
    bool eigen_violation = false;   ///< max Im eigenvalue > 1e-9
    bool unitary_violation = false; ///< |1 + S21| > 1 + 1e-9
    bool ok() const noexcept { return !eigen_violation && !unitary_violation; }
};

/// Never throws on violations; singular frequencies are skipped.
PassivityReport passivity_check(const HybridSystem& system, const std::vector<double>& omegas);

/// Additive complex Gaussian noise, sigma per real and imaginary component.
struct NoiseSpec {
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

/// SplitMix64 finalizer applied to seed + counter * golden gamma. Counter
/// based, so any grid point's draw can be computed in isolation.
std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter);

/// Standard normal pair for counter `index` (Box-Muller on two SplitMix64 draws).
cplx gaussian_pair(std::uint64_t seed, std::uint64_t index);

/// compute_map plus i.i.d. complex Gaussian noise. Grid point k uses counter
/// k, so the result does not depend on evaluation order or thread count.
SpectrumMap synth_map(const SystemTemplate& tmpl, const std::vector<double>& fields,
                      const std::vector<double>& freqs, const NoiseSpec& noise);

/// Adds noise to an existing map in place (same counter scheme as synth_map).
void add_noise(SpectrumMap& map, const NoiseSpec& noise);

}  // namespace magcouple
