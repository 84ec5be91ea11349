#pragma once

#include <iosfwd>
#include <string>

#include "magcouple/sweep/sweep.hpp"

namespace magcouple {

inline constexpr const char* kSpectrumHeader = "h_oe,omega,re_s21,im_s21";
inline constexpr const char* kBranchHeader = "h_oe,branch_index,re_eig,im_eig";

/// Formats with 17 significant digits, enough to round-trip any double.
std::string format_double(double v);

/// Long format, one row per grid point ordered by (h_oe, omega).
void write_spectrum_csv(std::ostream& os, const SpectrumMap& map);

/// Reads a complete grid. Throws Error{MalformedData} with the line number on
/// bad syntax, ordering violations or missing grid points.
SpectrumMap read_spectrum_csv(std::istream& is);

void write_branches_csv(std::ostream& os, const BranchCurves& curves);

}  // namespace magcouple
