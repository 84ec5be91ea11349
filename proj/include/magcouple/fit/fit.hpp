#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "magcouple/fit/optimizer.hpp"
#include "magcouple/fit/problem.hpp"
#include "magcouple/fit/ridges.hpp"
#include "magcouple/sweep/sweep.hpp"

namespace magcouple {

struct FitOptions {
    OptimOptions optim;
    bool refine = true;        ///< Levenberg-Marquardt polish after the simplex search
    int restarts = 5;          ///< jittered restarts when the first run does not converge
    double jitter = 0.3;       ///< relative spread of restart guesses
    std::uint64_t seed = 0x5eed;
};

struct FitResult {
    std::vector<std::string> names;
    std::vector<double> values;
    std::vector<double> stderrs;  ///< NaN when the local quadratic model is singular
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> history;
};

/// Sum over ridge points of (ridge frequency - nearest eigenvalue real part)^2.
double branch_objective(const RidgeSet& ridges, const SystemTemplate& tmpl);
/// Sum over the grid of |S21_model - S21_data|^2.
double map_objective(const SpectrumMap& map, const SystemTemplate& tmpl);

/// Least squares against eigenvalue branches; ties in the nearest-branch
/// assignment go to the lower branch. Throws DegenerateProblem if there are
/// fewer than (free parameters + 2) ridge points.
FitResult fit_branches(const RidgeSet& ridges, const FitProblem& problem, const FitOptions& opts = {});

/// Complex least squares over the full map. Throws DegenerateProblem if the
/// map has fewer points than free parameters.
FitResult fit_map(const SpectrumMap& map, const FitProblem& problem, const FitOptions& opts = {});

}  // namespace magcouple
