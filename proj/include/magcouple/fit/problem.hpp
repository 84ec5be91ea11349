#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "magcouple/sweep/template.hpp"

namespace magcouple {

enum class ParamKind { Coupling, Alpha, Beta, Omega, Gamma, FourPiM };

/// One scalar of a SystemTemplate. `other` is only used by couplings.
struct ParamRef {
    ParamKind kind = ParamKind::Coupling;
    std::size_t mode = 0;
    std::size_t other = 0;
};

double get_param(const SystemTemplate& tmpl, const ParamRef& ref);
void set_param(SystemTemplate& tmpl, const ParamRef& ref, double value);

/// Names: "g:<a>:<b>", "alpha:<m>", "beta:<m>", "omega:<m>", "gamma:<m>", "four_pi_m:<m>" using mode labels.
std::string param_name(const SystemTemplate& tmpl, const ParamRef& ref);
/// Inverse of param_name; throws Config with the offending name.
ParamRef parse_param(const SystemTemplate& tmpl, std::string_view name);

struct FreeParam {
    ParamRef ref;
    double lower = 0.0;
    double upper = 0.0;
    double initial = 0.0;
};

struct FitProblem {
    SystemTemplate tmpl;
    std::vector<FreeParam> params;

    /// Throws DegenerateProblem on bad bounds or an initial guess outside them.
    void validate() const;
    SystemTemplate apply(std::span<const double> values) const;
    std::vector<double> initial() const;
    std::vector<double> lower() const;
    std::vector<double> upper() const;
    std::vector<std::string> names() const;
};

/// S21 and its derivatives with respect to `refs` at one grid point.
struct S21Gradient {
    cplx value;
    std::vector<cplx> d;
};

/// Derivatives are bilinear in the solution x of M x = B. Extrinsic damping
/// of an undriven mode (beta = 0) has an unbounded derivative; those entries
/// fall back to a one-sided difference.
S21Gradient s21_gradient(const SystemTemplate& tmpl, std::span<const ParamRef> refs, double h, double omega);

/// Same, reusing `system` = instantiate(tmpl, h).
S21Gradient s21_gradient(const SystemTemplate& tmpl, const HybridSystem& system, std::span<const ParamRef> refs,
                         double h, double omega);

}  // namespace magcouple
