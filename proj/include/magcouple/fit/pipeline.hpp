#pragma once

#include <optional>
#include <vector>

#include "magcouple/fit/fit.hpp"
#include "magcouple/fit/regression.hpp"
#include "magcouple/oracle/oracle.hpp"
#include "magcouple/sweep/thickness.hpp"

namespace magcouple {

// End-to-end thickness study: per thickness, synthesize a map, extract
// ridges, seed the two couplings from the ridge gaps, fit the map, measure
// both anticrossing gaps on the fitted branches, then regress g2(t) and
// g1(g2) across thicknesses.
struct ThicknessStudy {
    SystemTemplate base;
    ThicknessModel model;
    Crosslink crosslink;
    SweepCouplings pairs;
    std::vector<double> thicknesses;
    std::vector<double> fields;
    std::vector<double> freqs;
    NoiseSpec noise;             ///< row i uses seed noise.seed + i
    bool fit = true;             ///< false: report the generating couplings
    std::size_t n_ridges = 3;
    double min_separation = 0.05;
    FitOptions fit_options;
};

struct ThicknessRow {
    double t = 0.0;
    double g1_true = 0.0;
    double g2_true = 0.0;
    double g1 = 0.0;
    double g2 = 0.0;
    double gap_p1 = 0.0;
    double gap_p2 = 0.0;
    bool converged = true;
};

struct ThicknessResult {
    std::vector<ThicknessRow> rows;
    // empty when the regression is undefined (fewer than two rows or a constant predictor)
    std::optional<LinearFit> g2_vs_t;
    std::optional<LinearFit> g1_vs_g2;
};

ThicknessResult run_thickness_study(const ThicknessStudy& study);

/// Starting guesses for the two couplings from ridge gaps (gap / 2). Falls
/// back to `fallback` for a crossing whose gap cannot be read off the ridges.
std::pair<double, double> initial_couplings(const SpectrumMap& map, const SystemTemplate& tmpl,
                                            const SweepCouplings& pairs, std::size_t n_ridges,
                                            double min_separation, double fallback);

}  // namespace magcouple
