#include "magcouple/sweep/thickness.hpp"

#include <fmt/format.h>

#include "magcouple/errors.hpp"

namespace magcouple {

std::vector<std::pair<double, SystemTemplate>> thickness_sweep(const SystemTemplate& base,
                                                               const ThicknessModel& model,
                                                               const Crosslink& crosslink,
                                                               const std::vector<double>& thicknesses,
                                                               const SweepCouplings& pairs)
{
    if (!(model.t_min <= model.t_max))
        raise(ErrorKind::InvalidGrid, "thickness range has t_min > t_max");
    // both models are affine, so checking the endpoints covers the whole range
    for (double t : {model.t_min, model.t_max}) {
        const double g2 = model.at(t);
        if (g2 < 0.0)
            raise(ErrorKind::NegativeCoupling, fmt::format("thickness model gives g = {} at t = {} um", g2, t));
        const double g1 = crosslink.at(g2);
        if (g1 < 0.0)
            raise(ErrorKind::NegativeCoupling, fmt::format("crosslink gives g = {} at t = {} um", g1, t));
    }

    std::vector<std::pair<double, SystemTemplate>> out;
    out.reserve(thicknesses.size());
    for (double t : thicknesses) {
        if (!(t >= model.t_min && t <= model.t_max))
            raise(ErrorKind::InvalidGrid,
                  fmt::format("thickness {} um outside [{}, {}]", t, model.t_min, model.t_max));
        SystemTemplate tmpl = base;
        const double g2 = model.at(t);
        tmpl.set_coupling(pairs.thickness_pair.first, pairs.thickness_pair.second, g2);
        tmpl.set_coupling(pairs.linked_pair.first, pairs.linked_pair.second, crosslink.at(g2));
        out.emplace_back(t, std::move(tmpl));
    }
    return out;
}

}  // namespace magcouple
