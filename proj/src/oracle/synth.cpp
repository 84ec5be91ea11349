#include <cmath>
#include <numbers>

#include "magcouple/errors.hpp"
#include "magcouple/oracle/oracle.hpp"

namespace magcouple {

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter)
{
    std::uint64_t z = seed + (counter + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

cplx gaussian_pair(std::uint64_t seed, std::uint64_t index)
{
    // 53-bit uniforms; u1 in (0, 1] keeps the log finite
    const double u1 = (static_cast<double>(splitmix64(seed, 2 * index) >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(splitmix64(seed, 2 * index + 1) >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

void add_noise(SpectrumMap& map, const NoiseSpec& noise)
{
    if (!(noise.sigma >= 0.0) || !std::isfinite(noise.sigma))
        raise(ErrorKind::Config, "noise sigma must be finite and >= 0");
    if (noise.sigma == 0.0)
        return;
    const auto n = static_cast<long>(map.values.size());
#pragma omp parallel for schedule(static)
    for (long k = 0; k < n; ++k)
        map.values[k] += noise.sigma * gaussian_pair(noise.seed, static_cast<std::uint64_t>(k));
}

SpectrumMap synth_map(const SystemTemplate& tmpl, const std::vector<double>& fields,
                      const std::vector<double>& freqs, const NoiseSpec& noise)
{
    SpectrumMap map = compute_map(tmpl, fields, freqs);
    add_noise(map, noise);
    return map;
}

}  // namespace magcouple
