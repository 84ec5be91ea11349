#pragma once

// Fixtures shared by the unit and acceptance suites.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "magcouple/core/types.hpp"
#include "magcouple/sweep/template.hpp"

namespace magcouple::testing {

inline double rel_err(cplx a, cplx b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline double rel_err(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Resonator at 5.0 with permalloy (P1, ~250 Oe) and YIG (P2, ~45 Oe)
// crossings; couplings default to the combined-system fit values.
inline SystemTemplate combined_template(double g1 = 0.2, double g2 = 0.21)
{
    return canonical_template({"py", 0.0, 0.03, 0.01}, kPermalloy, {"r", 5.0, 0.01, 0.04}, {"yig", 0.0, 0.005, 0.01},
                              kYig, g1, g2);
}

// One magnon and the resonator, lossless unless dampings are given.
inline SystemTemplate two_mode_template(const KittelMaterial& mat, double g, double alpha = 0.0, double beta = 0.0)
{
    SystemTemplate t;
    t.modes = {{{"m", 0.0, alpha, beta}, mat}, {{"r", 5.0, alpha, beta}, std::nullopt}};
    t.couplings = {{0, 1, g}};
    return t;
}

// Random damped three-mode system in the canonical layout.
inline HybridSystem random_system(std::mt19937_64& rng, bool canonical = true)
{
    std::uniform_real_distribution<double> w(1.0, 10.0), damp(0.01, 0.5), coup(-0.8, 0.8);
    std::vector<ModeSpec> modes;
    for (int i = 0; i < 3; ++i)
        modes.push_back({"m" + std::to_string(i), w(rng), damp(rng), damp(rng)});
    std::vector<Coupling> cs{{0, 1, coup(rng)}, {1, 2, coup(rng)}};
    if (!canonical)
        cs.push_back({0, 2, coup(rng)});
    return HybridSystem(modes, cs);
}

}  // namespace magcouple::testing
