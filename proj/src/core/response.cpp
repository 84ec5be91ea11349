#include "magcouple/core/response.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "magcouple/errors.hpp"

namespace magcouple {

namespace {

constexpr cplx kI{0.0, 1.0};

std::string describe(const ComplexMatrix& m)
{
    std::ostringstream os;
    os.precision(17);
    os << '[';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        os << (r ? "; " : "");
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            os << (c ? ", " : "") << m(r, c);
    }
    os << ']';
    return os.str();
}

}  // namespace

ComplexMatrix build_coupling_hamiltonian(const HybridSystem& system)
{
    system.validate();
    const auto n = static_cast<Eigen::Index>(system.size());
    ComplexMatrix h(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto& mj = system.mode(j);
        h(j, j) = cplx(mj.omega, -(mj.alpha + mj.beta));
        for (Eigen::Index k = j + 1; k < n; ++k) {
            const cplx v(system.coupling(j, k), -std::sqrt(mj.beta * system.mode(k).beta));
            h(j, k) = v;
            h(k, j) = v;
        }
    }
    return h;
}

ComplexVector drive_vector(const HybridSystem& system)
{
    const auto n = static_cast<Eigen::Index>(system.size());
    ComplexVector b(n);
    for (Eigen::Index j = 0; j < n; ++j)
        b(j) = std::sqrt(2.0 * system.mode(j).beta);
    return b;
}

Response solve_response(const HybridSystem& system, double omega)
{
    if (!std::isfinite(omega))
        raise(ErrorKind::InvalidSystem, "probe frequency is not finite");
    const ComplexMatrix h = build_coupling_hamiltonian(system);
    const ComplexVector b = drive_vector(system);
    const auto n = h.rows();

    if (b.isZero(0.0))
        return {cplx(0.0, 0.0), ComplexVector::Zero(n)};

    ComplexMatrix m = -kI * h;
    m.diagonal().array() += kI * omega;

    const Eigen::PartialPivLU<ComplexMatrix> lu(m);
    // the rcond estimator can miss an exactly zero pivot, so check pivots too
    const double rcond = lu.rcond();
    const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    const double scale = m.cwiseAbs().colwise().sum().maxCoeff();
    if (!(rcond * kSingularCondition > 1.0) || !(min_pivot * kSingularCondition > scale))
        raise(ErrorKind::SingularResponse,
              "condition estimate exceeds 1e14 at omega = " + std::to_string(omega));
    Response r{cplx(0.0, 0.0), lu.solve(b)};
    r.s21 = b.transpose() * r.x;
    if (!std::isfinite(r.s21.real()) || !std::isfinite(r.s21.imag()))
        raise(ErrorKind::SingularResponse, "non-finite response at omega = " + std::to_string(omega));
    return r;
}

cplx s21(const HybridSystem& system, double omega) { return solve_response(system, omega).s21; }

std::vector<cplx> eigenbranches(const HybridSystem& system)
{
    const ComplexMatrix h = build_coupling_hamiltonian(system);
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(h, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        raise(ErrorKind::EigenFailure, "eigenvalue iteration did not converge for " + describe(h));
    std::vector<cplx> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return ev;
}

}  // namespace magcouple
