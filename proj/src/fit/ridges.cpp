#include "magcouple/fit/ridges.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "magcouple/errors.hpp"

namespace magcouple {

std::size_t RidgeSet::count() const noexcept
{
    std::size_t n = 0;
    for (const auto& p : peaks)
        n += p.size();
    return n;
}

namespace {

// Vertex of the parabola through (x[k-1..k+1], y[k-1..k+1]).
Ridge refine_peak(const std::vector<double>& x, const std::vector<double>& y, std::size_t k)
{
    const double x0 = x[k - 1], x1 = x[k], x2 = x[k + 1];
    const double y0 = y[k - 1], y1 = y[k], y2 = y[k + 1];
    const double d1 = (y1 - y0) / (x1 - x0);
    const double d2 = (y2 - y1) / (x2 - x1);
    const double curv = (d2 - d1) / (x2 - x0);
    if (!(curv < 0.0))
        return {x1, y1};
    const double xs = std::clamp(0.5 * (x0 + x1) - d1 / (2.0 * curv), x0, x2);
    return {xs, y0 + d1 * (xs - x0) + curv * (xs - x0) * (xs - x1)};
}

}  // namespace

RidgeSet extract_ridges(const SpectrumMap& map, std::size_t n_ridges, double min_separation)
{
    if (map.fields.empty() || map.freqs.empty() || map.values.empty())
        raise(ErrorKind::EmptyMap, "spectrum map has no samples");
    map.validate();

    RidgeSet out{map.fields, std::vector<std::vector<Ridge>>(map.rows())};
    std::vector<double> mag(map.cols());
    for (std::size_t i = 0; i < map.rows(); ++i) {
        for (std::size_t j = 0; j < map.cols(); ++j)
            mag[j] = std::abs(map.at(i, j));

        std::vector<Ridge> candidates;
        for (std::size_t j = 1; j + 1 < map.cols(); ++j)
            if (mag[j] > mag[j - 1] && mag[j] >= mag[j + 1] && mag[j] > 0.0)
                candidates.push_back(refine_peak(map.freqs, mag, j));
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const Ridge& a, const Ridge& b) { return a.height > b.height; });

        auto& kept = out.peaks[i];
        for (const Ridge& c : candidates) {
            if (kept.size() >= n_ridges)
                break;
            const bool clear = std::all_of(kept.begin(), kept.end(), [&](const Ridge& r) {
                return std::abs(r.freq - c.freq) >= min_separation;
            });
            if (clear)
                kept.push_back(c);
        }
    }
    return out;
}

RidgeSet ridges_from_branches(const BranchCurves& curves)
{
    RidgeSet out{curves.fields, std::vector<std::vector<Ridge>>(curves.fields.size())};
    for (std::size_t i = 0; i < curves.fields.size(); ++i)
        for (const cplx& ev : curves.branches[i])
            out.peaks[i].push_back({ev.real(), 1.0});
    return out;
}

double ridge_gap(const RidgeSet& ridges, FieldWindow window, double center)
{
    double best = -1.0;
    for (std::size_t i = 0; i < ridges.fields.size(); ++i) {
        if (ridges.fields[i] < window.lo || ridges.fields[i] > window.hi)
            continue;
        double below = -std::numeric_limits<double>::infinity();
        double above = std::numeric_limits<double>::infinity();
        for (const Ridge& r : ridges.peaks[i]) {
            if (r.freq <= center)
                below = std::max(below, r.freq);
            else
                above = std::min(above, r.freq);
        }
        if (std::isfinite(below) && std::isfinite(above)) {
            const double sep = above - below;
            if (best < 0.0 || sep < best)
                best = sep;
        }
    }
    return best;
}

double ridge_fwhm(const SpectrumMap& map, std::size_t row, double freq)
{
    const auto& f = map.freqs;
    std::size_t k = static_cast<std::size_t>(std::lower_bound(f.begin(), f.end(), freq) - f.begin());
    if (k >= f.size())
        k = f.size() - 1;
    if (k > 0 && std::abs(f[k - 1] - freq) < std::abs(f[k] - freq))
        --k;
    auto power = [&](std::size_t j) { return std::norm(map.at(row, j)); };
    // climb to the local maximum
    while (k + 1 < f.size() && power(k + 1) > power(k))
        ++k;
    while (k > 0 && power(k - 1) > power(k))
        --k;
    const double half = 0.5 * power(k);
    if (!(half > 0.0))
        return -1.0;

    std::size_t lo = k;
    while (lo > 0 && power(lo) > half)
        --lo;
    std::size_t hi = k;
    while (hi + 1 < f.size() && power(hi) > half)
        ++hi;
    if (power(lo) > half || power(hi) > half)
        return -1.0;
    auto cross = [&](std::size_t a, std::size_t b) {
        const double pa = power(a), pb = power(b);
        return f[a] + (half - pa) * (f[b] - f[a]) / (pb - pa);
    };
    return cross(hi - 1, hi) - cross(lo, lo + 1);
}

}  // namespace magcouple
