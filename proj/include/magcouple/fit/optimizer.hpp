#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace magcouple {

struct OptimOptions {
    int max_iterations = 4000;
    double rel_tol = 1e-10;   ///< stop when an iteration lowers the objective by less than this (relative)
    double step_tol = 1e-12;  ///< stop when the step norm (bound-normalized) drops below this
    double initial_step = 0.1;  ///< simplex edge as a fraction of each bound interval
};

struct OptimResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> history;  ///< best objective after each accepted iteration
};

using ScalarObjective = std::function<double(std::span<const double>)>;

/// Bounded Nelder-Mead. Works in coordinates scaled to [0, 1] per parameter
/// and projects every trial vertex back onto the box.
OptimResult nelder_mead(const ScalarObjective& f, std::vector<double> x0, const std::vector<double>& lower,
                        const std::vector<double>& upper, const OptimOptions& opts = {});

// Residual vector and, if `jac` is non-null, its Jacobian (rows = residuals).
using ResidualFunction = std::function<void(std::span<const double> x, Eigen::VectorXd& r, Eigen::MatrixXd* jac)>;

/// Levenberg-Marquardt on sum of squared residuals with steps projected onto the box.
OptimResult levenberg_marquardt(const ResidualFunction& f, std::vector<double> x0, const std::vector<double>& lower,
                                const std::vector<double>& upper, const OptimOptions& opts = {});

/// Central-difference Jacobian; step is 1e-6 of max(|x_i|, 1e-3 * bound width).
Eigen::MatrixXd finite_difference_jacobian(const ResidualFunction& f, std::span<const double> x,
                                           const std::vector<double>& lower, const std::vector<double>& upper);

}  // namespace magcouple
