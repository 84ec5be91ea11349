#include "magcouple/sweep/template.hpp"

#include <string>
#include <utility>

#include "magcouple/core/kittel.hpp"
#include "magcouple/errors.hpp"

namespace magcouple {

std::size_t SystemTemplate::resonator_index() const
{
    for (std::size_t i = 0; i < modes.size(); ++i)
        if (!modes[i].is_magnon())
            return i;
    raise(ErrorKind::InvalidSystem, "template has no fixed-frequency resonator mode");
}

std::vector<std::size_t> SystemTemplate::magnon_indices() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < modes.size(); ++i)
        if (modes[i].is_magnon())
            out.push_back(i);
    return out;
}

double SystemTemplate::coupling(std::size_t a, std::size_t b) const
{
    for (const auto& c : couplings)
        if ((c.a == a && c.b == b) || (c.a == b && c.b == a))
            return c.g;
    return 0.0;
}

void SystemTemplate::set_coupling(std::size_t a, std::size_t b, double g)
{
    for (auto& c : couplings) {
        if ((c.a == a && c.b == b) || (c.a == b && c.b == a)) {
            c.g = g;
            return;
        }
    }
    couplings.push_back({a, b, g});
}

void SystemTemplate::validate() const
{
    for (const auto& m : modes)
        if (m.material)
            m.material->validate();
    // zero field exercises every structural invariant without Kittel input
    (void)instantiate(*this, 0.0);
}

SystemTemplate canonical_template(ModeSpec magnon1, KittelMaterial material1, ModeSpec resonator,
                                  ModeSpec magnon2, KittelMaterial material2, double g1, double g2)
{
    SystemTemplate t;
    t.modes = {{std::move(magnon1), material1}, {std::move(resonator), std::nullopt}, {std::move(magnon2), material2}};
    t.couplings = {{0, 1, g1}, {1, 2, g2}};
    return t;
}

HybridSystem instantiate(const SystemTemplate& tmpl, double h)
{
    if (!(h >= 0.0))
        raise(ErrorKind::NegativeField, "applied field " + std::to_string(h) + " Oe is negative");
    std::vector<ModeSpec> modes;
    modes.reserve(tmpl.modes.size());
    for (const auto& m : tmpl.modes) {
        ModeSpec s = m.spec;
        if (m.material)
            s.omega = kittel_frequency(*m.material, h);
        modes.push_back(std::move(s));
    }
    return HybridSystem(std::move(modes), tmpl.couplings);
}

}  // namespace magcouple
