#pragma once

#include <iosfwd>

#include "magcouple/sweep/sweep.hpp"

namespace magcouple {

/// Binary 8-bit portable graymap of |S21|: one pixel per grid point, field
/// along x (left to right ascending), frequency along y (top row highest).
/// |S21| maps linearly from [0, max] to [255, 0], so resonances are dark.
void write_heatmap_pgm(std::ostream& os, const SpectrumMap& map);

}  // namespace magcouple
