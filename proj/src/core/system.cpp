#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "magcouple/core/types.hpp"
#include "magcouple/errors.hpp"

namespace magcouple {

namespace {

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

double lambda_to_beta(double lambda) { return 2.0 * std::numbers::pi * lambda * lambda; }

void ModeSpec::validate() const
{
    if (!finite_nonneg(omega))
        raise(ErrorKind::InvalidSystem, "mode '" + label + "': omega must be finite and >= 0");
    if (!finite_nonneg(alpha))
        raise(ErrorKind::InvalidSystem, "mode '" + label + "': alpha must be finite and >= 0");
    if (!finite_nonneg(beta))
        raise(ErrorKind::InvalidSystem, "mode '" + label + "': beta must be finite and >= 0");
}

HybridSystem HybridSystem::unchecked(std::vector<ModeSpec> modes, const std::vector<Coupling>& couplings)
{
    HybridSystem s;
    const std::size_t n = modes.size();
    s.modes_ = std::move(modes);
    s.g_.assign(n * n, 0.0);
    for (const auto& c : couplings) {
        if (c.a >= n || c.b >= n)
            raise(ErrorKind::InvalidSystem, "coupling references mode index out of range");
        if (c.a == c.b)
            raise(ErrorKind::InvalidSystem, "self-coupling of mode " + std::to_string(c.a));
        s.g_[c.a * n + c.b] = c.g;
        s.g_[c.b * n + c.a] = c.g;
    }
    return s;
}

HybridSystem::HybridSystem(std::vector<ModeSpec> modes, const std::vector<Coupling>& couplings)
    : HybridSystem(unchecked(std::move(modes), couplings))
{
    validate();
}

HybridSystem HybridSystem::canonical(ModeSpec magnon1, ModeSpec resonator, ModeSpec magnon2, double g1, double g2)
{
    return HybridSystem({std::move(magnon1), std::move(resonator), std::move(magnon2)}, {{0, 1, g1}, {1, 2, g2}});
}

void HybridSystem::validate() const
{
    const std::size_t n = modes_.size();
    if (n == 0)
        raise(ErrorKind::InvalidSystem, "system has no modes");
    if (n > static_cast<std::size_t>(kMaxModes))
        raise(ErrorKind::InvalidSystem, "system has " + std::to_string(n) + " modes, limit is " + std::to_string(kMaxModes));
    for (const auto& m : modes_)
        m.validate();
    for (std::size_t i = 0; i < n; ++i) {
        if (g_[i * n + i] != 0.0)
            raise(ErrorKind::InvalidSystem, "nonzero self-coupling");
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite(g_[i * n + j]))
                raise(ErrorKind::InvalidSystem, "non-finite coupling");
            if (g_[i * n + j] != g_[j * n + i])
                raise(ErrorKind::InvalidSystem, "coupling map is not symmetric");
        }
    }
}

}  // namespace magcouple
