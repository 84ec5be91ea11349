#pragma once

#include <cstddef>
#include <vector>

#include "magcouple/sweep/anticrossing.hpp"
#include "magcouple/sweep/sweep.hpp"

namespace magcouple {

struct Ridge {
    double freq = 0.0;
    double height = 0.0;  ///< |S21| at the refined peak
};

/// Per-field lists of ridge points. Order within a field is strongest first
/// for extracted ridges; fitting code does not depend on it.
struct RidgeSet {
    std::vector<double> fields;
    std::vector<std::vector<Ridge>> peaks;

    std::size_t count() const noexcept;
};

/// Local maxima of |S21| along frequency for every field row, refined by a
/// three-point parabola, strongest first, pairwise at least `min_separation`
/// apart, at most `n_ridges` per row. Throws EmptyMap on an empty map.
RidgeSet extract_ridges(const SpectrumMap& map, std::size_t n_ridges, double min_separation);

/// Real parts of the branch eigenvalues as ridge points (unit height).
RidgeSet ridges_from_branches(const BranchCurves& curves);

/// Smallest separation between the ridges bracketing `center` (closest
/// below and closest above) over rows inside the window. Returns a negative
/// value if no row has ridges on both sides.
double ridge_gap(const RidgeSet& ridges, FieldWindow window, double center);

/// Full width at half maximum of |S21|^2 around the peak nearest `freq` in
/// map row `row`, linearly interpolated. Returns a negative value if the
/// half-power level is not reached on both sides within the row.
double ridge_fwhm(const SpectrumMap& map, std::size_t row, double freq);

}  // namespace magcouple
