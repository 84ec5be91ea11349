#include "magcouple/io/report.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "magcouple/errors.hpp"
#include "magcouple/io/csv.hpp"

namespace magcouple {

void write_fit_report(std::ostream& os, const FitResult& r, const std::string& method)
{
    os << "method: " << method << '\n';
    os << "converged: " << (r.converged ? "true" : "false") << '\n';
    os << "iterations: " << r.iterations << '\n';
    os << "residual: " << format_double(r.residual) << '\n';
    os << "parameter,value,stderr\n";
    for (std::size_t i = 0; i < r.names.size(); ++i) {
        const double se = i < r.stderrs.size() ? r.stderrs[i] : std::numeric_limits<double>::quiet_NaN();
        os << r.names[i] << ',' << format_double(r.values[i]) << ',' << (std::isnan(se) ? "nan" : format_double(se))
           << '\n';
    }
}

namespace {

[[noreturn]] void malformed(std::size_t line, const std::string& msg)
{
    raise(ErrorKind::MalformedData, fmt::format("report line {}: {}", line, msg));
}

std::string value_after(const std::string& line, const std::string& key, std::size_t lineno)
{
    const std::string prefix = key + ": ";
    if (line.rfind(prefix, 0) != 0)
        malformed(lineno, fmt::format("expected '{}'", prefix));
    return line.substr(prefix.size());
}

double to_double(const std::string& s, std::size_t lineno)
{
    if (s == "nan")
        return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        malformed(lineno, fmt::format("'{}' is not a number", s));
    return v;
}

}  // namespace

ParsedReport read_fit_report(std::istream& is)
{
    ParsedReport out;
    std::string line;
    std::size_t n = 0;
    auto next = [&] {
        if (!std::getline(is, line))
            malformed(n + 1, "unexpected end of report");
        ++n;
        return line;
    };
    out.method = value_after(next(), "method", n);
    const std::string conv = value_after(next(), "converged", n);
    if (conv != "true" && conv != "false")
        malformed(n, "converged must be true or false");
    out.result.converged = conv == "true";
    out.result.iterations = static_cast<int>(to_double(value_after(next(), "iterations", n), n));
    out.result.residual = to_double(value_after(next(), "residual", n), n);
    if (next() != "parameter,value,stderr")
        malformed(n, "expected parameter table header");
    while (std::getline(is, line)) {
        ++n;
        if (line.empty())
            continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            malformed(n, "expected parameter,value,stderr");
        out.result.names.push_back(line.substr(0, c1));
        out.result.values.push_back(to_double(line.substr(c1 + 1, c2 - c1 - 1), n));
        out.result.stderrs.push_back(to_double(line.substr(c2 + 1), n));
    }
    return out;
}

}  // namespace magcouple
