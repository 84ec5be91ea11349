#pragma once

#include <vector>

namespace magcouple {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares. r^2 is 1 when the residuals vanish (including
/// constant ys). Throws DegenerateData for < 2 points or constant xs.
LinearFit linear_regression(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace magcouple
