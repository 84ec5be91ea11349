#pragma once

#include <utility>
#include <vector>

#include "magcouple/sweep/template.hpp"

namespace magcouple {

/// Coupling linear in film thickness t (um): g(t) = slope * t + intercept.
struct ThicknessModel {
    double slope = 0.0;
    double intercept = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;

    double at(double t) const noexcept { return slope * t + intercept; }
};

/// Linear dependence of one coupling on another: g1 = m * g2 + c.
struct Crosslink {
    double m = 0.0;
    double c = 0.0;

    double at(double g2) const noexcept { return m * g2 + c; }
};

/// Which template couplings the sweep drives. Defaults to the canonical layout.
struct SweepCouplings {
    std::pair<std::size_t, std::size_t> thickness_pair{1, 2};  ///< resonator - YIG (g2)
    std::pair<std::size_t, std::size_t> linked_pair{0, 1};     ///< permalloy - resonator (g1)
};

/// Per thickness: g2 = model(t), g1 = crosslink(g2); every other parameter is
/// copied from `base`. Throws NegativeCoupling if either model dips below zero
/// on [t_min, t_max], InvalidGrid if a thickness lies outside that range.
std::vector<std::pair<double, SystemTemplate>> thickness_sweep(const SystemTemplate& base,
                                                               const ThicknessModel& model,
                                                               const Crosslink& crosslink,
                                                               const std::vector<double>& thicknesses,
                                                               const SweepCouplings& pairs = {});

}  // namespace magcouple
