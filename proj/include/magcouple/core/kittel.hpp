#pragma once

#include "magcouple/core/types.hpp"

namespace magcouple {

/// Ferromagnetic resonance frequency gamma * sqrt(h (h + 4 pi M)). Throws NegativeField for h < 0.
double kittel_frequency(const KittelMaterial& material, double h);

/// d(omega)/dh of the Kittel relation; infinite at h = 0.
double kittel_slope(const KittelMaterial& material, double h);

/// Inverse of kittel_frequency on h >= 0. Throws NegativeFrequency for omega < 0.
double field_for_frequency(const KittelMaterial& material, double omega);

}  // namespace magcouple
