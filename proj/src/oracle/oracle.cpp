#include "magcouple/oracle/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Eigenvalues>

#include "magcouple/core/response.hpp"
#include "magcouple/errors.hpp"

namespace magcouple {

namespace {

constexpr cplx kI{0.0, 1.0};

// (omega - H) assembled entry by entry from the mode list.
cplx detuning_entry(const HybridSystem& s, std::size_t j, std::size_t k, double omega)
{
    const ModeSpec& a = s.mode(j);
    if (j == k)
        return cplx(omega - a.omega, a.alpha + a.beta);
    const ModeSpec& b = s.mode(k);
    return cplx(-s.coupling(j, k), std::sqrt(a.beta) * std::sqrt(b.beta));
}

double max_abs(const std::vector<cplx>& a)
{
    double m = 0.0;
    for (const auto& v : a)
        m = std::max(m, std::abs(v));
    return m;
}

// No validation, so passivity_check can probe deliberately invalid systems.
cplx sum_form(const HybridSystem& system, double omega)
{
    const std::size_t n = system.size();
    std::vector<double> root_beta(n);
    bool driven = false;
    for (std::size_t j = 0; j < n; ++j) {
        root_beta[j] = std::sqrt(system.mode(j).beta);
        driven = driven || root_beta[j] != 0.0;
    }
    if (!driven)
        return {0.0, 0.0};

    // augmented system [A | rhs], rows x cols(n + 1)
    std::vector<cplx> a(n * (n + 1));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k)
            a[j * (n + 1) + k] = detuning_entry(system, j, k, omega);
        a[j * (n + 1) + n] = root_beta[j];
    }
    const double scale = std::max(max_abs(a), 1.0);

    std::vector<std::size_t> col(n);
    for (std::size_t k = 0; k < n; ++k)
        col[k] = k;
    for (std::size_t p = 0; p < n; ++p) {
        std::size_t pr = p, pc = p;
        double big = -1.0;
        for (std::size_t r = p; r < n; ++r)
            for (std::size_t c = p; c < n; ++c)
                if (std::abs(a[r * (n + 1) + c]) > big) {
                    big = std::abs(a[r * (n + 1) + c]);
                    pr = r;
                    pc = c;
                }
        if (big <= scale * 1e-14)
            raise(ErrorKind::SingularResponse, "pivot vanished in sum-form oracle");
        if (pr != p)
            for (std::size_t c = 0; c <= n; ++c)
                std::swap(a[p * (n + 1) + c], a[pr * (n + 1) + c]);
        if (pc != p) {
            for (std::size_t r = 0; r < n; ++r)
                std::swap(a[r * (n + 1) + p], a[r * (n + 1) + pc]);
            std::swap(col[p], col[pc]);
        }
        const cplx piv = a[p * (n + 1) + p];
        for (std::size_t r = p + 1; r < n; ++r) {
            const cplx f = a[r * (n + 1) + p] / piv;
            if (f == cplx(0.0, 0.0))
                continue;
            for (std::size_t c = p; c <= n; ++c)
                a[r * (n + 1) + c] -= f * a[p * (n + 1) + c];
        }
    }
    std::vector<cplx> y(n);
    for (std::size_t p = n; p-- > 0;) {
        cplx acc = a[p * (n + 1) + n];
        for (std::size_t c = p + 1; c < n; ++c)
            acc -= a[p * (n + 1) + c] * y[c];
        y[p] = acc / a[p * (n + 1) + p];
    }
    std::vector<cplx> amplitude(n);
    for (std::size_t k = 0; k < n; ++k)
        amplitude[col[k]] = y[k];

    cplx sum{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j)
        sum += root_beta[j] * amplitude[j];
    return (2.0 / kI) * sum;
}

}  // namespace

cplx s21_sum_oracle(const HybridSystem& system, double omega)
{
    system.validate();
    if (!std::isfinite(omega))
        raise(ErrorKind::InvalidSystem, "probe frequency is not finite");
    return sum_form(system, omega);
}

cplx s21_cramer_oracle(const HybridSystem& system, double omega)
{
    system.validate();
    if (system.size() != 3)
        raise(ErrorKind::InvalidSystem, "Cramer oracle needs exactly three modes");

    std::array<std::array<cplx, 3>, 3> m{};
    std::array<cplx, 3> b{};
    for (std::size_t j = 0; j < 3; ++j) {
        b[j] = std::sqrt(2.0 * system.mode(j).beta);
        for (std::size_t k = 0; k < 3; ++k)
            m[j][k] = kI * detuning_entry(system, j, k, omega);
    }
    if (b[0] == 0.0 && b[1] == 0.0 && b[2] == 0.0)
        return {0.0, 0.0};

    std::array<std::array<cplx, 3>, 3> adj{};
    adj[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    adj[0][1] = m[0][2] * m[2][1] - m[0][1] * m[2][2];
    adj[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
    adj[1][0] = m[1][2] * m[2][0] - m[1][0] * m[2][2];
    adj[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
    adj[1][2] = m[0][2] * m[1][0] - m[0][0] * m[1][2];
    adj[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
    adj[2][1] = m[0][1] * m[2][0] - m[0][0] * m[2][1];
    adj[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const cplx det = m[0][0] * adj[0][0] + m[0][1] * adj[1][0] + m[0][2] * adj[2][0];

    double scale = 0.0;
    for (const auto& row : m)
        for (const auto& v : row)
            scale = std::max(scale, std::abs(v));
    if (!(std::abs(det) > 1e-14 * scale * scale * scale))
        raise(ErrorKind::SingularResponse, "determinant vanishes relative to matrix scale");

    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k)
            acc += b[j] * adj[j][k] * b[k];
    return acc / det;
}

PassivityReport passivity_check(const HybridSystem& system, const std::vector<double>& omegas)
{
    PassivityReport r;
    const auto n = static_cast<Eigen::Index>(system.size());
    ComplexMatrix h(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k)
            h(j, k) = -detuning_entry(system, j, k, 0.0);
    const Eigen::ComplexEigenSolver<ComplexMatrix> solver(h, false);
    r.max_imag_eigenvalue = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        r.max_imag_eigenvalue = std::max(r.max_imag_eigenvalue, solver.eigenvalues()(i).imag());

    for (double w : omegas) {
        try {
            r.max_abs_one_plus_s21 = std::max(r.max_abs_one_plus_s21, std::abs(1.0 + sum_form(system, w)));
        } catch (const Error&) {
            // singular probe frequency: no finite response to check
        }
    }
    r.eigen_violation = r.max_imag_eigenvalue > 1e-9;
    r.unitary_violation = r.max_abs_one_plus_s21 > 1.0 + 1e-9;
    return r;
}

}  // namespace magcouple
