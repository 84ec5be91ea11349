#include "magcouple/sweep/sweep.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "magcouple/core/response.hpp"
#include "magcouple/detail/first_error.hpp"
#include "magcouple/errors.hpp"

namespace magcouple {

std::vector<double> linspace(double start, double stop, std::size_t count)
{
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = start;
        return out;
    }
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = start + step * static_cast<double>(i);
    if (count > 1)
        out.back() = stop;
    return out;
}

void check_grid(const std::vector<double>& grid, const char* name)
{
    if (grid.empty())
        raise(ErrorKind::InvalidGrid, fmt::format("{} grid is empty", name));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]))
            raise(ErrorKind::InvalidGrid, fmt::format("{} grid has a non-finite value at index {}", name, i));
        if (i > 0 && !(grid[i] > grid[i - 1]))
            raise(ErrorKind::InvalidGrid, fmt::format("{} grid is not strictly ascending at index {}", name, i));
    }
}

void SpectrumMap::validate() const
{
    check_grid(fields, "field");
    check_grid(freqs, "frequency");
    if (values.size() != fields.size() * freqs.size())
        raise(ErrorKind::InvalidGrid,
              fmt::format("map holds {} values for a {}x{} grid", values.size(), fields.size(), freqs.size()));
}

namespace {

HybridSystem system_at(const SystemTemplate& tmpl, double h)
{
    try {
        return instantiate(tmpl, h);
    } catch (const Error& e) {
        throw e.with_context(fmt::format("h = {} Oe", h));
    }
}

void fill_row(const SystemTemplate& tmpl, const std::vector<double>& freqs, double h, cplx* row)
{
    const HybridSystem sys = system_at(tmpl, h);
    for (std::size_t j = 0; j < freqs.size(); ++j) {
        try {
            row[j] = s21(sys, freqs[j]);
        } catch (const Error& e) {
            throw e.with_context(fmt::format("h = {} Oe, omega = {}", h, freqs[j]));
        }
    }
}

std::vector<cplx> branches_at(const SystemTemplate& tmpl, double h)
{
    const HybridSystem sys = system_at(tmpl, h);
    try {
        return eigenbranches(sys);
    } catch (const Error& e) {
        throw e.with_context(fmt::format("h = {} Oe", h));
    }
}

}  // namespace

SpectrumMap compute_map_serial(const SystemTemplate& tmpl, const std::vector<double>& fields,
                               const std::vector<double>& freqs)
{
    check_grid(fields, "field");
    check_grid(freqs, "frequency");
    SpectrumMap map{fields, freqs, std::vector<cplx>(fields.size() * freqs.size())};
    for (std::size_t i = 0; i < fields.size(); ++i)
        fill_row(tmpl, freqs, fields[i], &map.at(i, 0));
    return map;
}

SpectrumMap compute_map(const SystemTemplate& tmpl, const std::vector<double>& fields,
                        const std::vector<double>& freqs)
{
    check_grid(fields, "field");
    check_grid(freqs, "frequency");
    SpectrumMap map{fields, freqs, std::vector<cplx>(fields.size() * freqs.size())};
    detail::FirstError err;
    const auto rows = static_cast<long>(fields.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < rows; ++i)
        err.run([&] { fill_row(tmpl, freqs, fields[i], &map.at(i, 0)); });
    err.rethrow();
    return map;
}

BranchCurves compute_branches_serial(const SystemTemplate& tmpl, const std::vector<double>& fields)
{
    check_grid(fields, "field");
    BranchCurves out{fields, std::vector<std::vector<cplx>>(fields.size())};
    for (std::size_t i = 0; i < fields.size(); ++i)
        out.branches[i] = branches_at(tmpl, fields[i]);
    return out;
}

BranchCurves compute_branches(const SystemTemplate& tmpl, const std::vector<double>& fields)
{
    check_grid(fields, "field");
    BranchCurves out{fields, std::vector<std::vector<cplx>>(fields.size())};
    detail::FirstError err;
    const auto rows = static_cast<long>(fields.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < rows; ++i)
        err.run([&] { out.branches[i] = branches_at(tmpl, fields[i]); });
    err.rethrow();
    return out;
}

}  // namespace magcouple
