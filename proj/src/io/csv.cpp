#include "magcouple/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <fmt/format.h>

#include "magcouple/errors.hpp"

namespace magcouple {

namespace {

[[noreturn]] void malformed(std::size_t line, const std::string& msg)
{
    raise(ErrorKind::MalformedData, fmt::format("line {}: {}", line, msg));
}

double parse_field(std::string_view s, std::size_t line, const char* column)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        malformed(line, fmt::format("column {} is not a finite number: '{}'", column, s));
    return v;
}

std::string_view trim_cr(std::string_view s)
{
    if (!s.empty() && s.back() == '\r')
        s.remove_suffix(1);
    return s;
}

}  // namespace

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

void write_spectrum_csv(std::ostream& os, const SpectrumMap& map)
{
    map.validate();
    os << kSpectrumHeader << '\n';
    fmt::memory_buffer buf;
    for (std::size_t i = 0; i < map.rows(); ++i) {
        for (std::size_t j = 0; j < map.cols(); ++j) {
            const cplx v = map.at(i, j);
            buf.clear();
            fmt::format_to(std::back_inserter(buf), "{:.17g},{:.17g},{:.17g},{:.17g}\n", map.fields[i], map.freqs[j],
                           v.real(), v.imag());
            os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        }
    }
}

SpectrumMap read_spectrum_csv(std::istream& is)
{
    struct Row {
        double h, w;
        cplx v;
        std::size_t line;
    };
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(is, line))
        malformed(lineno, "file is empty");
    if (trim_cr(line) != kSpectrumHeader)
        malformed(lineno, fmt::format("expected header '{}'", kSpectrumHeader));

    std::vector<Row> rows;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string_view text = trim_cr(line);
        if (text.empty())
            continue;
        std::string_view parts[4];
        std::size_t start = 0;
        for (int k = 0; k < 4; ++k) {
            const std::size_t comma = text.find(',', start);
            if ((k < 3) == (comma == std::string_view::npos))
                malformed(lineno, "expected exactly 4 comma-separated columns");
            parts[k] = text.substr(start, k < 3 ? comma - start : std::string_view::npos);
            start = comma + 1;
        }
        rows.push_back({parse_field(parts[0], lineno, "h_oe"), parse_field(parts[1], lineno, "omega"),
                        cplx(parse_field(parts[2], lineno, "re_s21"), parse_field(parts[3], lineno, "im_s21")),
                        lineno});
    }
    if (rows.empty())
        malformed(lineno, "no data rows");

    SpectrumMap map;
    for (const Row& r : rows) {
        if (r.h != rows.front().h)
            break;
        if (!map.freqs.empty() && !(r.w > map.freqs.back()))
            malformed(r.line, fmt::format("omega {} is not ascending", r.w));
        map.freqs.push_back(r.w);
    }
    const std::size_t nf = map.freqs.size();

    std::size_t k = 0;
    while (k < rows.size()) {
        const double h = rows[k].h;
        if (!map.fields.empty() && !(h > map.fields.back()))
            malformed(rows[k].line, fmt::format("h_oe {} is not ascending", h));
        map.fields.push_back(h);
        std::size_t j = 0;
        for (; k < rows.size() && rows[k].h == h; ++k, ++j) {
            if (j >= nf)
                malformed(rows[k].line, fmt::format("field h_oe = {} has more than {} frequencies", h, nf));
            if (rows[k].w != map.freqs[j])
                malformed(rows[k].line, fmt::format("field h_oe = {}: missing grid point omega = {} (found {})", h,
                                                    map.freqs[j], rows[k].w));
            map.values.push_back(rows[k].v);
        }
        if (j != nf) {
            const std::size_t at = k < rows.size() ? rows[k].line : rows.back().line;
            malformed(at, fmt::format("field h_oe = {}: missing grid point omega = {}", h, map.freqs[j]));
        }
    }
    return map;
}

void write_branches_csv(std::ostream& os, const BranchCurves& curves)
{
    os << kBranchHeader << '\n';
    for (std::size_t i = 0; i < curves.fields.size(); ++i)
        for (std::size_t k = 0; k < curves.branches[i].size(); ++k) {
            const cplx e = curves.branches[i][k];
            os << fmt::format("{:.17g},{},{:.17g},{:.17g}\n", curves.fields[i], k, e.real(), e.imag());
        }
}

}  // namespace magcouple
