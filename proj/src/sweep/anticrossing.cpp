#include "magcouple/sweep/anticrossing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "magcouple/core/kittel.hpp"
#include "magcouple/errors.hpp"

namespace magcouple {

AnticrossingReport anticrossing_gap(const BranchCurves& curves, FieldWindow window)
{
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < curves.fields.size(); ++i)
        if (curves.fields[i] >= window.lo && curves.fields[i] <= window.hi)
            idx.push_back(i);
    if (idx.size() < 3)
        raise(ErrorKind::WindowTooNarrow,
              fmt::format("window [{}, {}] Oe holds {} field points, need 3", window.lo, window.hi, idx.size()));

    auto separation = [&](std::size_t i, std::size_t pair) {
        const auto& b = curves.branches[i];
        return b[pair + 1].real() - b[pair].real();
    };

    std::size_t best_pos = 0;
    std::size_t best_pair = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < idx.size(); ++p) {
        const std::size_t nb = curves.branches[idx[p]].size();
        for (std::size_t q = 0; q + 1 < nb; ++q) {
            const double s = separation(idx[p], q);
            if (s < best) {
                best = s;
                best_pos = p;
                best_pair = q;
            }
        }
    }
    if (!std::isfinite(best))
        raise(ErrorKind::NoMinimum, "fewer than two branches in window");
    if (best_pos == 0 || best_pos + 1 == idx.size())
        raise(ErrorKind::NoMinimum,
              fmt::format("separation is smallest at the window edge h = {} Oe", curves.fields[idx[best_pos]]));

    const double x0 = curves.fields[idx[best_pos - 1]];
    const double x1 = curves.fields[idx[best_pos]];
    const double x2 = curves.fields[idx[best_pos + 1]];
    const double y0 = separation(idx[best_pos - 1], best_pair);
    const double y1 = best;
    const double y2 = separation(idx[best_pos + 1], best_pair);

    AnticrossingReport r{x1, y1, y1 / 2.0};
    const double d1 = (y1 - y0) / (x1 - x0);
    const double d2 = (y2 - y1) / (x2 - x1);
    const double curv = (d2 - d1) / (x2 - x0);
    if (curv > 0.0) {
        const double xs = std::clamp(0.5 * (x0 + x1) - d1 / (2.0 * curv), x0, x2);
        const double ys = y0 + d1 * (xs - x0) + curv * (xs - x0) * (xs - x1);
        r.h_star = xs;
        r.gap = std::clamp(ys, 0.0, y1);
        r.g_estimate = r.gap / 2.0;
    }
    return r;
}

double crossing_field(const SystemTemplate& tmpl, std::size_t magnon)
{
    const auto& m = tmpl.modes.at(magnon);
    if (!m.material)
        raise(ErrorKind::InvalidSystem, fmt::format("mode {} does not follow the Kittel relation", magnon));
    return field_for_frequency(*m.material, tmpl.modes[tmpl.resonator_index()].spec.omega);
}

FieldWindow crossing_window(const SystemTemplate& tmpl, std::size_t magnon, double field_lo, double field_hi)
{
    const double h = crossing_field(tmpl, magnon);
    FieldWindow w{field_lo, field_hi};
    for (std::size_t other : tmpl.magnon_indices()) {
        if (other == magnon)
            continue;
        const double ho = crossing_field(tmpl, other);
        const double mid = 0.5 * (h + ho);
        if (ho > h)
            w.hi = std::min(w.hi, mid);
        else if (ho < h)
            w.lo = std::max(w.lo, mid);
    }
    return w;
}

}  // namespace magcouple
