#include "magcouple/fit/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "magcouple/core/response.hpp"
#include "magcouple/detail/first_error.hpp"
#include "magcouple/errors.hpp"
#include "magcouple/oracle/oracle.hpp"

namespace magcouple {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<ParamRef> refs_of(const FitProblem& problem)
{
    std::vector<ParamRef> refs;
    for (const auto& p : problem.params)
        refs.push_back(p.ref);
    return refs;
}

// Residuals Re/Im of (model - data) per grid point, row-major. Parameter
// points where the model cannot be evaluated produce infinite residuals.
void map_residuals(const SpectrumMap& map, const FitProblem& problem, std::span<const double> x, Eigen::VectorXd& r,
                   Eigen::MatrixXd* jac)
{
    const SystemTemplate tmpl = problem.apply(x);
    const std::vector<ParamRef> refs = refs_of(problem);
    const std::size_t cols = map.cols();
    const auto np = static_cast<Eigen::Index>(refs.size());
    r.resize(static_cast<Eigen::Index>(2 * map.values.size()));
    if (jac)
        jac->resize(r.size(), np);

    detail::FirstError err;
    const auto rows = static_cast<long>(map.rows());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < rows; ++i) {
        err.run([&] {
            const double h = map.fields[i];
            const HybridSystem sys = instantiate(tmpl, h);
            for (std::size_t j = 0; j < cols; ++j) {
                const auto k = static_cast<Eigen::Index>(2 * (i * cols + j));
                const cplx data = map.at(i, j);
                if (jac) {
                    const S21Gradient g = s21_gradient(tmpl, sys, refs, h, map.freqs[j]);
                    r(k) = g.value.real() - data.real();
                    r(k + 1) = g.value.imag() - data.imag();
                    for (Eigen::Index p = 0; p < np; ++p) {
                        (*jac)(k, p) = g.d[p].real();
                        (*jac)(k + 1, p) = g.d[p].imag();
                    }
                } else {
                    const cplx v = s21(sys, map.freqs[j]);
                    r(k) = v.real() - data.real();
                    r(k + 1) = v.imag() - data.imag();
                }
            }
        });
    }
    if (err.failed()) {
        r.setConstant(kInf);
        if (jac)
            jac->setZero();
    }
}

// One residual per ridge point: ridge frequency minus the nearest branch
// real part at that field (ties go to the lower branch).
void branch_residuals(const RidgeSet& ridges, const FitProblem& problem, std::span<const double> x,
                      Eigen::VectorXd& r)
{
    const SystemTemplate tmpl = problem.apply(x);
    std::vector<std::size_t> offset(ridges.fields.size() + 1, 0);
    for (std::size_t i = 0; i < ridges.fields.size(); ++i)
        offset[i + 1] = offset[i] + ridges.peaks[i].size();
    r.resize(static_cast<Eigen::Index>(offset.back()));

    detail::FirstError err;
    const auto rows = static_cast<long>(ridges.fields.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < rows; ++i) {
        if (ridges.peaks[i].empty())
            continue;
        err.run([&] {
            const std::vector<cplx> ev = eigenbranches(instantiate(tmpl, ridges.fields[i]));
            for (std::size_t q = 0; q < ridges.peaks[i].size(); ++q) {
                const double f = ridges.peaks[i][q].freq;
                double nearest = ev.front().real();
                for (const cplx& e : ev)
                    if (std::abs(f - e.real()) < std::abs(f - nearest))
                        nearest = e.real();
                r(static_cast<Eigen::Index>(offset[i] + q)) = f - nearest;
            }
        });
    }
    if (err.failed())
        r.setConstant(kInf);
}

double sum_squares(const Eigen::VectorXd& r)
{
    const double v = r.squaredNorm();
    return std::isfinite(v) ? v : kInf;
}

OptimResult attempt(const ResidualFunction& resid, const std::vector<double>& x0, const std::vector<double>& lo,
                    const std::vector<double>& hi, const FitOptions& opts)
{
    const ScalarObjective objective = [&](std::span<const double> x) {
        Eigen::VectorXd r;
        resid(x, r, nullptr);
        return sum_squares(r);
    };
    if (!opts.refine)
        return nelder_mead(objective, x0, lo, hi, opts.optim);

    // coarse simplex search, then Levenberg-Marquardt to full tolerance
    OptimOptions coarse = opts.optim;
    coarse.rel_tol = std::max(coarse.rel_tol, 1e-8);
    coarse.step_tol = std::max(coarse.step_tol, 1e-7);
    OptimResult nm = nelder_mead(objective, x0, lo, hi, coarse);
    OptimResult lm = levenberg_marquardt(resid, nm.x, lo, hi, opts.optim);

    OptimResult out = lm;
    out.iterations = nm.iterations + lm.iterations;
    out.history = nm.history;
    out.history.insert(out.history.end(), lm.history.begin() + 1, lm.history.end());
    if (!(lm.value <= nm.value)) {
        out.x = nm.x;
        out.value = nm.value;
    }
    return out;
}

std::vector<double> local_stderr(const ResidualFunction& resid, const std::vector<double>& x, double value)
{
    Eigen::VectorXd r;
    Eigen::MatrixXd jac;
    resid(x, r, &jac);
    const auto m = r.size();
    const auto p = jac.cols();
    std::vector<double> out(static_cast<std::size_t>(p), std::numeric_limits<double>::quiet_NaN());
    if (m <= p || !jac.allFinite())
        return out;
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(jtj);
    if (!lu.isInvertible())
        return out;
    const Eigen::MatrixXd cov = lu.inverse() * (value / static_cast<double>(m - p));
    for (Eigen::Index i = 0; i < p; ++i)
        out[static_cast<std::size_t>(i)] = std::sqrt(std::max(cov(i, i), 0.0));
    return out;
}

FitResult run_fit(const FitProblem& problem, const ResidualFunction& resid, const FitOptions& opts)
{
    problem.validate();
    FitResult res;
    res.names = problem.names();
    const std::vector<double> lo = problem.lower();
    const std::vector<double> hi = problem.upper();
    const std::vector<double> x0 = problem.initial();

    if (problem.params.empty()) {
        Eigen::VectorXd r;
        resid(x0, r, nullptr);
        res.residual = sum_squares(r);
        res.converged = true;
        res.history = {res.residual};
        return res;
    }

    OptimResult best = attempt(resid, x0, lo, hi, opts);
    for (int k = 0; k < opts.restarts && !best.converged; ++k) {
        std::vector<double> start(x0.size());
        for (std::size_t i = 0; i < x0.size(); ++i) {
            const double u = static_cast<double>(splitmix64(opts.seed, k * x0.size() + i) >> 11) * 0x1.0p-53;
            start[i] = std::clamp(x0[i] * (1.0 + opts.jitter * (2.0 * u - 1.0)), lo[i], hi[i]);
        }
        OptimResult trial = attempt(resid, start, lo, hi, opts);
        if ((trial.converged && trial.value <= best.value * (1.0 + 1e-9)) || trial.value < best.value)
            best = std::move(trial);
    }

    res.values = best.x;
    res.residual = best.value;
    res.iterations = best.iterations;
    res.converged = best.converged;
    res.history = std::move(best.history);
    res.stderrs = local_stderr(resid, res.values, res.residual);
    return res;
}

}  // namespace

double branch_objective(const RidgeSet& ridges, const SystemTemplate& tmpl)
{
    Eigen::VectorXd r;
    branch_residuals(ridges, FitProblem{tmpl, {}}, {}, r);
    return sum_squares(r);
}

double map_objective(const SpectrumMap& map, const SystemTemplate& tmpl)
{
    Eigen::VectorXd r;
    map_residuals(map, FitProblem{tmpl, {}}, {}, r, nullptr);
    return sum_squares(r);
}

FitResult fit_branches(const RidgeSet& ridges, const FitProblem& problem, const FitOptions& opts)
{
    if (ridges.count() < problem.params.size() + 2)
        raise(ErrorKind::DegenerateProblem, "fewer ridge points than free parameters + 2");
    const std::vector<double> lo = problem.lower();
    const std::vector<double> hi = problem.upper();
    ResidualFunction plain = [&](std::span<const double> x, Eigen::VectorXd& r, Eigen::MatrixXd*) {
        branch_residuals(ridges, problem, x, r);
    };
    ResidualFunction resid = [&](std::span<const double> x, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
        branch_residuals(ridges, problem, x, r);
        if (jac)
            *jac = finite_difference_jacobian(plain, x, lo, hi);
    };
    return run_fit(problem, resid, opts);
}

FitResult fit_map(const SpectrumMap& map, const FitProblem& problem, const FitOptions& opts)
{
    map.validate();
    if (map.values.size() < problem.params.size())
        raise(ErrorKind::DegenerateProblem, "map has fewer points than free parameters");
    ResidualFunction resid = [&](std::span<const double> x, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
        map_residuals(map, problem, x, r, jac);
    };
    return run_fit(problem, resid, opts);
}

}  // namespace magcouple
