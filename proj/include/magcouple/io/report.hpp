#pragma once

#include <iosfwd>
#include <string>

#include "magcouple/fit/fit.hpp"

namespace magcouple {

// Plain-text fit report:
//
//   method: map
//   converged: true
//   iterations: 37
//   residual: 1.0e-12
//   parameter,value,stderr
//   g:py:r,0.2,1e-6
void write_fit_report(std::ostream& os, const FitResult& result, const std::string& method);

struct ParsedReport {
    std::string method;
    FitResult result;
};

/// Throws Error{MalformedData} on a report that write_fit_report could not have produced.
ParsedReport read_fit_report(std::istream& is);

}  // namespace magcouple
