#pragma once

#include <cstddef>
#include <vector>

#include "magcouple/sweep/template.hpp"

namespace magcouple {

/// `count` evenly spaced points from start to stop inclusive.
std::vector<double> linspace(double start, double stop, std::size_t count);

/// Throws InvalidGrid unless the grid is nonempty, finite and strictly ascending.
void check_grid(const std::vector<double>& grid, const char* name);

/// Complex S21 over a (field x frequency) grid, stored row-major [field][freq].
struct SpectrumMap {
    std::vector<double> fields;
    std::vector<double> freqs;
    std::vector<cplx> values;

    std::size_t rows() const noexcept { return fields.size(); }
    std::size_t cols() const noexcept { return freqs.size(); }
    cplx& at(std::size_t i, std::size_t j) { return values[i * freqs.size() + j]; }
    const cplx& at(std::size_t i, std::size_t j) const { return values[i * freqs.size() + j]; }

    /// Throws InvalidGrid if the value array does not match the grids.
    void validate() const;

    bool operator==(const SpectrumMap&) const = default;
};

/// Sorted eigenvalues of the instantiated system at each field point.
struct BranchCurves {
    std::vector<double> fields;
    std::vector<std::vector<cplx>> branches;
};

// OpenMP kernels: parallel over field rows, each grid point independent.
SpectrumMap compute_map(const SystemTemplate& tmpl, const std::vector<double>& fields,
                        const std::vector<double>& freqs);
BranchCurves compute_branches(const SystemTemplate& tmpl, const std::vector<double>& fields);

// Serial reference implementations. Kept for testing the parallel kernels
// and for the benchmark.
SpectrumMap compute_map_serial(const SystemTemplate& tmpl, const std::vector<double>& fields,
                               const std::vector<double>& freqs);
BranchCurves compute_branches_serial(const SystemTemplate& tmpl, const std::vector<double>& fields);

}  // namespace magcouple
