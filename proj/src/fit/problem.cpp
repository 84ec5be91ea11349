#include "magcouple/fit/problem.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "magcouple/core/kittel.hpp"
#include "magcouple/core/response.hpp"
#include "magcouple/errors.hpp"

namespace magcouple {

namespace {

constexpr cplx kI{0.0, 1.0};

const KittelMaterial& material_of(const SystemTemplate& tmpl, std::size_t mode)
{
    const auto& m = tmpl.modes.at(mode);
    if (!m.material)
        raise(ErrorKind::DegenerateProblem, fmt::format("mode '{}' has no Kittel material", m.spec.label));
    return *m.material;
}

KittelMaterial& material_of(SystemTemplate& tmpl, std::size_t mode)
{
    auto& m = tmpl.modes.at(mode);
    if (!m.material)
        raise(ErrorKind::DegenerateProblem, fmt::format("mode '{}' has no Kittel material", m.spec.label));
    return *m.material;
}

std::size_t mode_by_label(const SystemTemplate& tmpl, std::string_view label, std::string_view name)
{
    for (std::size_t i = 0; i < tmpl.modes.size(); ++i)
        if (tmpl.modes[i].spec.label == label)
            return i;
    raise(ErrorKind::Config, fmt::format("parameter '{}' names unknown mode '{}'", name, label));
}

}  // namespace

double get_param(const SystemTemplate& tmpl, const ParamRef& ref)
{
    switch (ref.kind) {
    case ParamKind::Coupling: return tmpl.coupling(ref.mode, ref.other);
    case ParamKind::Alpha: return tmpl.modes.at(ref.mode).spec.alpha;
    case ParamKind::Beta: return tmpl.modes.at(ref.mode).spec.beta;
    case ParamKind::Omega: return tmpl.modes.at(ref.mode).spec.omega;
    case ParamKind::Gamma: return material_of(tmpl, ref.mode).gamma;
    case ParamKind::FourPiM: return material_of(tmpl, ref.mode).four_pi_m;
    }
    return 0.0;
}

void set_param(SystemTemplate& tmpl, const ParamRef& ref, double value)
{
    switch (ref.kind) {
    case ParamKind::Coupling: tmpl.set_coupling(ref.mode, ref.other, value); break;
    case ParamKind::Alpha: tmpl.modes.at(ref.mode).spec.alpha = value; break;
    case ParamKind::Beta: tmpl.modes.at(ref.mode).spec.beta = value; break;
    case ParamKind::Omega: tmpl.modes.at(ref.mode).spec.omega = value; break;
    case ParamKind::Gamma: material_of(tmpl, ref.mode).gamma = value; break;
    case ParamKind::FourPiM: material_of(tmpl, ref.mode).four_pi_m = value; break;
    }
}

std::string param_name(const SystemTemplate& tmpl, const ParamRef& ref)
{
    const std::string& label = tmpl.modes.at(ref.mode).spec.label;
    switch (ref.kind) {
    case ParamKind::Coupling: return fmt::format("g:{}:{}", label, tmpl.modes.at(ref.other).spec.label);
    case ParamKind::Alpha: return "alpha:" + label;
    case ParamKind::Beta: return "beta:" + label;
    case ParamKind::Omega: return "omega:" + label;
    case ParamKind::Gamma: return "gamma:" + label;
    case ParamKind::FourPiM: return "four_pi_m:" + label;
    }
    return label;
}

ParamRef parse_param(const SystemTemplate& tmpl, std::string_view name)
{
    const auto colon = name.find(':');
    if (colon == std::string_view::npos)
        raise(ErrorKind::Config, fmt::format("parameter '{}' is not of the form <kind>:<mode>", name));
    const std::string_view kind = name.substr(0, colon);
    const std::string_view rest = name.substr(colon + 1);

    if (kind == "g") {
        const auto c2 = rest.find(':');
        if (c2 == std::string_view::npos)
            raise(ErrorKind::Config, fmt::format("coupling parameter '{}' needs two mode labels", name));
        ParamRef r{ParamKind::Coupling, mode_by_label(tmpl, rest.substr(0, c2), name),
                   mode_by_label(tmpl, rest.substr(c2 + 1), name)};
        if (r.mode == r.other)
            raise(ErrorKind::Config, fmt::format("coupling parameter '{}' couples a mode to itself", name));
        return r;
    }
    const std::size_t mode = mode_by_label(tmpl, rest, name);
    const bool magnon = tmpl.modes[mode].is_magnon();
    if (kind == "alpha")
        return {ParamKind::Alpha, mode, 0};
    if (kind == "beta")
        return {ParamKind::Beta, mode, 0};
    if (kind == "omega") {
        if (magnon)
            raise(ErrorKind::Config, fmt::format("'{}': Kittel modes have no free omega", name));
        return {ParamKind::Omega, mode, 0};
    }
    if (kind == "gamma" || kind == "four_pi_m") {
        if (!magnon)
            raise(ErrorKind::Config, fmt::format("'{}': mode has no Kittel material", name));
        return {kind == "gamma" ? ParamKind::Gamma : ParamKind::FourPiM, mode, 0};
    }
    raise(ErrorKind::Config, fmt::format("parameter '{}' has unknown kind '{}'", name, kind));
}

void FitProblem::validate() const
{
    for (const auto& p : params) {
        const std::string name = param_name(tmpl, p.ref);
        if (!std::isfinite(p.lower) || !std::isfinite(p.upper) || p.lower > p.upper)
            raise(ErrorKind::DegenerateProblem, fmt::format("parameter '{}' has invalid bounds", name));
        if (!(p.initial >= p.lower && p.initial <= p.upper))
            raise(ErrorKind::DegenerateProblem, fmt::format("initial guess of '{}' is outside its bounds", name));
    }
}

SystemTemplate FitProblem::apply(std::span<const double> values) const
{
    SystemTemplate t = tmpl;
    for (std::size_t i = 0; i < params.size(); ++i)
        set_param(t, params[i].ref, values[i]);
    return t;
}

std::vector<double> FitProblem::initial() const
{
    std::vector<double> v;
    for (const auto& p : params)
        v.push_back(p.initial);
    return v;
}

std::vector<double> FitProblem::lower() const
{
    std::vector<double> v;
    for (const auto& p : params)
        v.push_back(p.lower);
    return v;
}

std::vector<double> FitProblem::upper() const
{
    std::vector<double> v;
    for (const auto& p : params)
        v.push_back(p.upper);
    return v;
}

std::vector<std::string> FitProblem::names() const
{
    std::vector<std::string> v;
    for (const auto& p : params)
        v.push_back(param_name(tmpl, p.ref));
    return v;
}

S21Gradient s21_gradient(const SystemTemplate& tmpl, std::span<const ParamRef> refs, double h, double omega)
{
    return s21_gradient(tmpl, instantiate(tmpl, h), refs, h, omega);
}

S21Gradient s21_gradient(const SystemTemplate& tmpl, const HybridSystem& sys, std::span<const ParamRef> refs,
                         double h, double omega)
{
    const Response resp = solve_response(sys, omega);
    const ComplexVector& x = resp.x;

    S21Gradient out{resp.s21, std::vector<cplx>(refs.size())};
    for (std::size_t p = 0; p < refs.size(); ++p) {
        const ParamRef& ref = refs[p];
        const auto j = static_cast<Eigen::Index>(ref.mode);
        cplx d;
        switch (ref.kind) {
        case ParamKind::Coupling:
            d = 2.0 * kI * x(j) * x(static_cast<Eigen::Index>(ref.other));
            break;
        case ParamKind::Alpha:
            d = x(j) * x(j);
            break;
        case ParamKind::Omega:
            d = kI * x(j) * x(j);
            break;
        case ParamKind::Gamma: {
            const auto& mat = material_of(tmpl, ref.mode);
            d = kI * x(j) * x(j) * std::sqrt(h * (h + mat.four_pi_m));
            break;
        }
        case ParamKind::FourPiM: {
            const auto& mat = material_of(tmpl, ref.mode);
            const double root = std::sqrt(h * (h + mat.four_pi_m));
            d = root > 0.0 ? kI * x(j) * x(j) * (mat.gamma * h / (2.0 * root)) : cplx(0.0, 0.0);
            break;
        }
        case ParamKind::Beta: {
            const double bj = sys.mode(ref.mode).beta;
            if (bj > 0.0) {
                const double rj = std::sqrt(bj);
                cplx cross = std::sqrt(2.0);
                for (std::size_t k = 0; k < sys.size(); ++k)
                    if (k != ref.mode)
                        cross += std::sqrt(sys.mode(k).beta) * x(static_cast<Eigen::Index>(k));
                d = x(j) * x(j) + x(j) * cross / rj;
            } else {
                SystemTemplate t = tmpl;
                const double step = 1e-8;
                set_param(t, ref, step);
                d = (s21(instantiate(t, h), omega) - resp.s21) / step;
            }
            break;
        }
        }
        out.d[p] = d;
    }
    return out;
}

}  // namespace magcouple
