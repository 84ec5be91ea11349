#include "magcouple/core/kittel.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "magcouple/errors.hpp"

namespace magcouple {

void KittelMaterial::validate() const
{
    if (!(std::isfinite(gamma) && gamma > 0.0))
        raise(ErrorKind::InvalidSystem, "gyromagnetic ratio must be positive and finite");
    if (!(std::isfinite(four_pi_m) && four_pi_m > 0.0))
        raise(ErrorKind::InvalidSystem, "saturation magnetization must be positive and finite");
}

double kittel_frequency(const KittelMaterial& material, double h)
{
    if (!(h >= 0.0))
        raise(ErrorKind::NegativeField, "applied field " + std::to_string(h) + " Oe is negative");
    return material.gamma * std::sqrt(h * (h + material.four_pi_m));
}

double kittel_slope(const KittelMaterial& material, double h)
{
    if (!(h >= 0.0))
        raise(ErrorKind::NegativeField, "applied field " + std::to_string(h) + " Oe is negative");
    const double root = std::sqrt(h * (h + material.four_pi_m));
    if (root == 0.0)
        return std::numeric_limits<double>::infinity();
    return material.gamma * (2.0 * h + material.four_pi_m) / (2.0 * root);
}

double field_for_frequency(const KittelMaterial& material, double omega)
{
    if (!(omega >= 0.0))
        raise(ErrorKind::NegativeFrequency, "frequency " + std::to_string(omega) + " is negative");
    // h^2 + 4piM h - (omega/gamma)^2 = 0, positive root written without cancellation
    const double w = omega / material.gamma;
    const double m = material.four_pi_m;
    return 2.0 * w * w / (m + std::sqrt(m * m + 4.0 * w * w));
}

}  // namespace magcouple
