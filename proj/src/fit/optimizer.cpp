#include "magcouple/fit/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Cholesky>

namespace magcouple {

namespace {

// Maps between parameter space and the unit box. Fixed parameters
// (lower == upper) get zero width and never move.
struct BoxScale {
    std::vector<double> lo;
    std::vector<double> width;

    std::vector<double> to_x(const std::vector<double>& u) const
    {
        std::vector<double> x(u.size());
        for (std::size_t i = 0; i < u.size(); ++i)
            x[i] = lo[i] + std::clamp(u[i], 0.0, 1.0) * width[i];
        return x;
    }
    std::vector<double> to_u(const std::vector<double>& x) const
    {
        std::vector<double> u(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            u[i] = width[i] > 0.0 ? std::clamp((x[i] - lo[i]) / width[i], 0.0, 1.0) : 0.0;
        return u;
    }
};

BoxScale make_scale(const std::vector<double>& lower, const std::vector<double>& upper)
{
    BoxScale s{lower, std::vector<double>(lower.size())};
    for (std::size_t i = 0; i < lower.size(); ++i)
        s.width[i] = std::max(0.0, upper[i] - lower[i]);
    return s;
}

bool small_decrease(double before, double after, double rel_tol)
{
    return before - after <= rel_tol * std::abs(before);
}

}  // namespace

OptimResult nelder_mead(const ScalarObjective& f, std::vector<double> x0, const std::vector<double>& lower,
                        const std::vector<double>& upper, const OptimOptions& opts)
{
    const std::size_t n = x0.size();
    const BoxScale box = make_scale(lower, upper);
    auto eval = [&](const std::vector<double>& u) { return f(box.to_x(u)); };

    OptimResult res;
    if (n == 0) {
        res.x = x0;
        res.value = f(x0);
        res.converged = true;
        return res;
    }

    std::vector<std::vector<double>> simplex(n + 1, box.to_u(x0));
    for (std::size_t i = 0; i < n; ++i) {
        auto& v = simplex[i + 1];
        v[i] += v[i] + opts.initial_step <= 1.0 ? opts.initial_step : -opts.initial_step;
    }
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        fv[i] = eval(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> s2;
        std::vector<double> f2;
        for (std::size_t k : order) {
            s2.push_back(simplex[k]);
            f2.push_back(fv[k]);
        }
        simplex.swap(s2);
        fv.swap(f2);
    };
    auto clamp_unit = [](std::vector<double>& u) {
        for (double& c : u)
            c = std::clamp(c, 0.0, 1.0);
    };
    auto affine = [&](const std::vector<double>& c, const std::vector<double>& w, double t) {
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = c[i] + t * (w[i] - c[i]);
        clamp_unit(out);
        return out;
    };

    sort_simplex();
    res.history.push_back(fv[0]);
    for (int it = 1; it <= opts.max_iterations; ++it) {
        std::vector<double> centroid(n, 0.0);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                centroid[i] += simplex[k][i] / static_cast<double>(n);

        const auto xr = affine(centroid, simplex[n], -1.0);
        const double fr = eval(xr);
        if (fr < fv[0]) {
            const auto xe = affine(centroid, simplex[n], -2.0);
            const double fe = eval(xe);
            if (fe < fr) {
                simplex[n] = xe;
                fv[n] = fe;
            } else {
                simplex[n] = xr;
                fv[n] = fr;
            }
        } else if (fr < fv[n - 1]) {
            simplex[n] = xr;
            fv[n] = fr;
        } else {
            const bool outside = fr < fv[n];
            const auto xc = affine(centroid, outside ? xr : simplex[n], 0.5);
            const double fc = eval(xc);
            if (fc < std::min(fr, fv[n])) {
                simplex[n] = xc;
                fv[n] = fc;
            } else {
                for (std::size_t k = 1; k <= n; ++k) {
                    simplex[k] = affine(simplex[0], simplex[k], 0.5);
                    fv[k] = eval(simplex[k]);
                }
            }
        }
        sort_simplex();
        res.iterations = it;
        res.history.push_back(fv[0]);

        double diameter = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            double d = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                d += (simplex[k][i] - simplex[0][i]) * (simplex[k][i] - simplex[0][i]);
            diameter = std::max(diameter, std::sqrt(d));
        }
        // The simplex spread plays the role of the per-iteration decrease:
        // once every vertex agrees to rel_tol, no iteration can gain more.
        const bool flat = small_decrease(fv[n], fv[0], opts.rel_tol) && diameter < std::sqrt(opts.rel_tol);
        if (flat || diameter < opts.step_tol) {
            res.converged = true;
            break;
        }
    }
    res.x = box.to_x(simplex[0]);
    res.value = fv[0];
    return res;
}

Eigen::MatrixXd finite_difference_jacobian(const ResidualFunction& f, std::span<const double> x,
                                           const std::vector<double>& lower, const std::vector<double>& upper)
{
    std::vector<double> xp(x.begin(), x.end());
    Eigen::VectorXd r0;
    f(xp, r0, nullptr);
    Eigen::MatrixXd jac(r0.size(), static_cast<Eigen::Index>(x.size()));
    Eigen::VectorXd rp, rm;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double h = 1e-6 * std::max(std::abs(x[i]), 1e-3 * (upper[i] - lower[i]));
        const double hi = std::min(x[i] + h, upper[i]);
        const double lo = std::max(x[i] - h, lower[i]);
        if (!(hi > lo)) {
            jac.col(static_cast<Eigen::Index>(i)).setZero();
            continue;
        }
        xp[i] = hi;
        f(xp, rp, nullptr);
        xp[i] = lo;
        f(xp, rm, nullptr);
        xp[i] = x[i];
        jac.col(static_cast<Eigen::Index>(i)) = (rp - rm) / (hi - lo);
    }
    return jac;
}

OptimResult levenberg_marquardt(const ResidualFunction& f, std::vector<double> x0, const std::vector<double>& lower,
                                const std::vector<double>& upper, const OptimOptions& opts)
{
    const std::size_t n = x0.size();
    const BoxScale box = make_scale(lower, upper);
    for (std::size_t i = 0; i < n; ++i)
        x0[i] = std::clamp(x0[i], lower[i], upper[i]);

    OptimResult res;
    res.x = x0;
    Eigen::VectorXd r;
    Eigen::MatrixXd jac;
    f(res.x, r, n ? &jac : nullptr);
    res.value = r.squaredNorm();
    res.history.push_back(res.value);
    if (n == 0) {
        res.converged = true;
        return res;
    }

    double lambda = 1e-3;
    for (int it = 1; it <= opts.max_iterations; ++it) {
        res.iterations = it;
        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const Eigen::VectorXd jtr = jac.transpose() * r;
        Eigen::MatrixXd a = jtj;
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            a(i, i) += lambda * std::max(jtj(i, i), 1e-300);
        const Eigen::VectorXd delta = a.ldlt().solve(-jtr);

        std::vector<double> trial(n);
        double step2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            trial[i] = std::clamp(res.x[i] + delta(static_cast<Eigen::Index>(i)), lower[i], upper[i]);
            if (box.width[i] > 0.0) {
                const double s = (trial[i] - res.x[i]) / box.width[i];
                step2 += s * s;
            }
        }
        if (!delta.allFinite() || std::sqrt(step2) < opts.step_tol) {
            res.converged = delta.allFinite();
            break;
        }

        Eigen::VectorXd rt;
        f(trial, rt, nullptr);
        const double ft = rt.squaredNorm();
        if (std::isfinite(ft) && ft < res.value) {
            const double before = res.value;
            res.x = trial;
            res.value = ft;
            res.history.push_back(ft);
            lambda = std::max(lambda / 10.0, 1e-12);
            if (small_decrease(before, ft, opts.rel_tol)) {
                res.converged = true;
                break;
            }
            f(res.x, r, &jac);
        } else {
            lambda *= 10.0;
            if (lambda > 1e16) {
                // no descent direction left at machine precision
                res.converged = true;
                break;
            }
        }
    }
    return res;
}

}  // namespace magcouple
