#pragma once

#include "magcouple/sweep/sweep.hpp"

namespace magcouple {

struct FieldWindow {
    double lo = 0.0;
    double hi = 0.0;
};

struct AnticrossingReport {
    double h_star = 0.0;      ///< field of minimal branch separation (Oe)
    double gap = 0.0;         ///< minimal separation of adjacent sorted real parts
    double g_estimate = 0.0;  ///< gap / 2
};

/// Minimal separation between adjacent sorted branch real parts inside the
/// window, refined by a parabola through the bracketing grid points.
///
/// Throws WindowTooNarrow if fewer than three field points fall inside the
/// window, NoMinimum if the smallest separation sits on a window edge.
AnticrossingReport anticrossing_gap(const BranchCurves& curves, FieldWindow window);

/// Field at which Kittel mode `magnon` of the template meets the fixed resonator frequency.
double crossing_field(const SystemTemplate& tmpl, std::size_t magnon);

/// Window around the crossing of `magnon`, reaching halfway to neighbouring
/// crossings of the other magnons and clipped to [field_lo, field_hi].
FieldWindow crossing_window(const SystemTemplate& tmpl, std::size_t magnon, double field_lo, double field_hi);

}  // namespace magcouple
