#include "magcouple/io/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

namespace magcouple {

void write_heatmap_pgm(std::ostream& os, const SpectrumMap& map)
{
    map.validate();
    const std::size_t width = map.rows();
    const std::size_t height = map.cols();
    double peak = 0.0;
    for (const cplx& v : map.values)
        peak = std::max(peak, std::abs(v));

    os << "P5\n" << width << ' ' << height << "\n255\n";
    std::vector<unsigned char> line(width);
    for (std::size_t y = 0; y < height; ++y) {
        const std::size_t j = height - 1 - y;
        for (std::size_t i = 0; i < width; ++i) {
            const double level = peak > 0.0 ? std::abs(map.at(i, j)) / peak : 0.0;
            line[i] = static_cast<unsigned char>(std::lround(255.0 * (1.0 - std::clamp(level, 0.0, 1.0))));
        }
        os.write(reinterpret_cast<const char*>(line.data()), static_cast<std::streamsize>(line.size()));
    }
}

}  // namespace magcouple
