#include "magcouple/fit/regression.hpp"

#include <algorithm>

#include "magcouple/errors.hpp"

namespace magcouple {

LinearFit linear_regression(const std::vector<double>& xs, const std::vector<double>& ys)
{
    if (xs.size() != ys.size())
        raise(ErrorKind::DegenerateData, "xs and ys differ in length");
    const std::size_t n = xs.size();
    if (n < 2)
        raise(ErrorKind::DegenerateData, "need at least two points");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0)
        raise(ErrorKind::DegenerateData, "predictor is constant");

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = ys[i] - (fit.slope * xs[i] + fit.intercept);
        ss_res += e * e;
    }
    // zero total variance: perfect fit by convention
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    return fit;
}

}  // namespace magcouple
