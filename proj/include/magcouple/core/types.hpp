#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace magcouple {

using cplx = std::complex<double>;

// Upper bound on the number of coupled modes. Matrices are sized at compile
// time up to this bound so the per-frequency solves never touch the heap.
inline constexpr int kMaxModes = 16;

using ComplexMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxModes, kMaxModes>;
using ComplexVector = Eigen::Matrix<cplx, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxModes, 1>;

/// One damped oscillator. All rates share the model frequency unit.
struct ModeSpec {
    std::string label;
    double omega = 0.0;  ///< resonance frequency
    double alpha = 0.0;  ///< intrinsic damping
    double beta = 0.0;   ///< extrinsic (stripline) damping

    /// Throws InvalidSystem unless all values are finite and non-negative.
    void validate() const;
};

/// Coherent coupling between modes `a` and `b` (indices into the mode list).
struct Coupling {
    std::size_t a = 0;
    std::size_t b = 0;
    double g = 0.0;
};

/// Extrinsic damping from the stripline coupling amplitude: beta = 2 pi lambda^2.
double lambda_to_beta(double lambda);

/// Ordered modes plus a real symmetric coupling matrix with zero diagonal.
///
/// The canonical three-mode layout is [magnon 1, resonator, magnon 2]; the
/// two magnons couple only through the resonator so g(0, 2) stays zero.
class HybridSystem {
public:
    HybridSystem() = default;

    /// Validates every invariant; throws InvalidSystem on violation.
    HybridSystem(std::vector<ModeSpec> modes, const std::vector<Coupling>& couplings);

    /// Skips validation. Intended for diagnostics that must see invalid input.
    static HybridSystem unchecked(std::vector<ModeSpec> modes, const std::vector<Coupling>& couplings);

    /// Canonical [magnon1, resonator, magnon2] system with g(0,1) = g1, g(1,2) = g2.
    static HybridSystem canonical(ModeSpec magnon1, ModeSpec resonator, ModeSpec magnon2, double g1, double g2);

    std::size_t size() const noexcept { return modes_.size(); }
    const std::vector<ModeSpec>& modes() const noexcept { return modes_; }
    const ModeSpec& mode(std::size_t i) const { return modes_.at(i); }
    double coupling(std::size_t i, std::size_t j) const { return g_.at(i * modes_.size() + j); }

    void validate() const;

private:
    std::vector<ModeSpec> modes_;
    std::vector<double> g_;  // row-major n x n, symmetric
};

/// Gyromagnetic ratio (model frequency units per Oe) and saturation magnetization 4 pi M (G).
struct KittelMaterial {
    double gamma = 0.0;
    double four_pi_m = 0.0;

    void validate() const;
};

// Material constants used throughout the examples and shipped configs.
inline constexpr KittelMaterial kYig{1.76e-2, 1750.0};
inline constexpr KittelMaterial kPermalloy{2.94e-3, 10900.0};

}  // namespace magcouple
