#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "magcouple/core/kittel.hpp"
#include "magcouple/core/response.hpp"
#include "magcouple/errors.hpp"
#include "magcouple/sweep/anticrossing.hpp"
#include "magcouple/sweep/sweep.hpp"
#include "magcouple/sweep/thickness.hpp"
#include "support.hpp"

using namespace magcouple;
using magcouple::testing::combined_template;
using magcouple::testing::rel_err;
using magcouple::testing::two_mode_template;

namespace {

ErrorKind kind_of(const auto& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::Io;
}

// Dense grid around a field with the given step and half-width in steps.
std::vector<double> grid_around(double center, double step, int half)
{
    std::vector<double> g;
    for (int k = -half; k <= half; ++k)
        g.push_back(center + k * step);
    return g;
}

}  // namespace

TEST_CASE("instantiate")
{
    const SystemTemplate t = combined_template();
    SUBCASE("zero field leaves only the resonator frequency")
    {
        const HybridSystem s = instantiate(t, 0.0);
        CHECK(s.mode(0).omega == 0.0);
        CHECK(s.mode(1).omega == 5.0);
        CHECK(s.mode(2).omega == 0.0);
    }
    SUBCASE("YIG at 1000 Oe")
    {
        CHECK(rel_err(instantiate(t, 1000.0).mode(2).omega, 29.1862981551275186722) < 1e-12);
    }
    SUBCASE("bare resonator is field independent")
    {
        SystemTemplate bare;
        bare.modes = {{{"r", 5.0, 0.1, 0.2}, std::nullopt}};
        for (double h : {0.0, 10.0, 1e4})
            CHECK(s21(instantiate(bare, h), 5.1) == s21(HybridSystem({{"r", 5.0, 0.1, 0.2}}, {}), 5.1));
    }
    SUBCASE("negative field")
    {
        CHECK(kind_of([&] { instantiate(t, -1.0); }) == ErrorKind::NegativeField);
    }
}

TEST_CASE("compute_map")
{
    const SystemTemplate t = combined_template();
    SUBCASE("1x1 grid is one s21 call")
    {
        const SpectrumMap m = compute_map(t, {120.0}, {5.05});
        REQUIRE(m.values.size() == 1);
        CHECK(m.values[0] == s21(instantiate(t, 120.0), 5.05));
    }
    SUBCASE("beta = 0 gives an all-zero map")
    {
        SystemTemplate z = t;
        for (auto& m : z.modes)
            m.spec.beta = 0.0;
        const SpectrumMap m = compute_map(z, linspace(20, 320, 7), linspace(4, 6, 9));
        CHECK(std::all_of(m.values.begin(), m.values.end(), [](cplx v) { return v == cplx(0.0, 0.0); }));
    }
    SUBCASE("parallel kernel equals the serial reference bit for bit")
    {
        const auto fields = linspace(20, 320, 61);
        const auto freqs = linspace(4, 6, 81);
        CHECK(compute_map(t, fields, freqs) == compute_map_serial(t, fields, freqs));
    }
    SUBCASE("restriction to a sub-grid equals the direct computation")
    {
        const auto fields = linspace(20, 320, 31);
        const auto freqs = linspace(4, 6, 41);
        const SpectrumMap full = compute_map(t, fields, freqs);
        std::vector<double> sf, sw;
        std::vector<std::size_t> fi, wi;
        for (std::size_t i = 1; i < fields.size(); i += 3) {
            sf.push_back(fields[i]);
            fi.push_back(i);
        }
        for (std::size_t j = 0; j < freqs.size(); j += 4) {
            sw.push_back(freqs[j]);
            wi.push_back(j);
        }
        const SpectrumMap sub = compute_map(t, sf, sw);
        for (std::size_t a = 0; a < fi.size(); ++a)
            for (std::size_t b = 0; b < wi.size(); ++b)
                CHECK(sub.at(a, b) == full.at(fi[a], wi[b]));
    }
    SUBCASE("invalid grids")
    {
        CHECK(kind_of([&] { compute_map(t, {}, {1.0}); }) == ErrorKind::InvalidGrid);
        CHECK(kind_of([&] { compute_map(t, {2.0, 1.0}, {1.0}); }) == ErrorKind::InvalidGrid);
        CHECK(kind_of([&] { compute_map(t, {1.0}, {1.0, 1.0}); }) == ErrorKind::InvalidGrid);
    }
    SUBCASE("core errors carry the grid coordinate")
    {
        // lossless decoupled resonator probed exactly on resonance
        SystemTemplate s;
        s.modes = {{{"r", 5.0, 0.0, 0.0}, std::nullopt}, {{"d", 0.0, 0.1, 0.1}, kYig}};
        try {
            compute_map(s, {10.0, 20.0}, {4.0, 5.0});
            FAIL("expected SingularResponse");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::SingularResponse);
            CHECK(std::string(e.what()).find("omega = 5") != std::string::npos);
        }
    }
}

TEST_CASE("compute_branches")
{
    SUBCASE("parallel equals serial")
    {
        const auto fields = linspace(20, 320, 101);
        const SystemTemplate t = combined_template();
        const BranchCurves a = compute_branches(t, fields);
        const BranchCurves b = compute_branches_serial(t, fields);
        CHECK(a.fields == b.fields);
        CHECK(a.branches == b.branches);
    }
    SUBCASE("decoupled lossless template gives bare dispersions")
    {
        const SystemTemplate t = combined_template(0.0, 0.0);
        SystemTemplate lossless = t;
        for (auto& m : lossless.modes)
            m.spec.alpha = m.spec.beta = 0.0;
        const auto fields = linspace(20, 320, 31);
        const BranchCurves c = compute_branches(lossless, fields);
        for (std::size_t i = 0; i < fields.size(); ++i) {
            std::vector<double> bare{kittel_frequency(kPermalloy, fields[i]), 5.0, kittel_frequency(kYig, fields[i])};
            std::sort(bare.begin(), bare.end());
            for (std::size_t k = 0; k < 3; ++k) {
                CHECK(std::abs(c.branches[i][k].real() - bare[k]) < 1e-12);
                CHECK(c.branches[i][k].imag() == doctest::Approx(0.0).epsilon(1e-12));
            }
        }
    }
    SUBCASE("branches become continuous as the grid is refined")
    {
        const SystemTemplate t = combined_template();
        double prev_jump = 1e300;
        for (std::size_t n : {51, 101, 201, 401}) {
            const BranchCurves c = compute_branches(t, linspace(20, 320, n));
            double jump = 0.0;
            for (std::size_t i = 1; i < n; ++i)
                for (std::size_t k = 0; k < 3; ++k)
                    jump = std::max(jump, std::abs(c.branches[i][k].real() - c.branches[i - 1][k].real()));
            // halving the step at least roughly halves the largest jump
            CHECK(jump < 0.6 * prev_jump);
            prev_jump = jump;
        }
    }
}

TEST_CASE("anticrossing gap of a lossless degenerate pair is 2g")
{
    for (const auto& mat : {kPermalloy, kYig}) {
        for (double g : {0.11, 0.2, 0.21, 0.25}) {
            const SystemTemplate t = two_mode_template(mat, g);
            const double hc = crossing_field(t, 0);
            const double step = 2.0 * g / 100.0;
            const BranchCurves c = compute_branches(t, grid_around(hc + 0.3 * step, step, 60));
            const auto r = anticrossing_gap(c, {hc - 60 * step, hc + 61 * step});
            CHECK(rel_err(r.gap, 2.0 * g) < 1e-6);
            CHECK(rel_err(r.g_estimate, g) < 1e-6);
            CHECK(std::abs(r.h_star - hc) < step);
        }
    }
}

TEST_CASE("anticrossing gap edge cases")
{
    SUBCASE("g = 0 true crossing has zero gap")
    {
        const SystemTemplate t = two_mode_template(kYig, 0.0);
        const double hc = crossing_field(t, 0);
        const BranchCurves c = compute_branches(t, grid_around(hc, 0.5, 20));
        const auto r = anticrossing_gap(c, {hc - 10.0, hc + 10.0});
        CHECK(r.gap < 1e-12);
        CHECK(std::abs(r.h_star - hc) < 0.5);
    }
    SUBCASE("permalloy-only g = 0.11 through a coarse sweep")
    {
        const SystemTemplate t = two_mode_template(kPermalloy, 0.11, 0.0, 0.0);
        const BranchCurves c = compute_branches(t, linspace(20, 400, 381));
        const auto r = anticrossing_gap(c, crossing_window(t, 0, 20, 400));
        CHECK(rel_err(r.g_estimate, 0.11) < 0.01);
    }
    SUBCASE("window with fewer than three points")
    {
        const BranchCurves c = compute_branches(two_mode_template(kYig, 0.2), linspace(0, 100, 11));
        CHECK(kind_of([&] { anticrossing_gap(c, {40.0, 55.0}); }) == ErrorKind::WindowTooNarrow);
    }
    SUBCASE("window that misses the crossing")
    {
        const SystemTemplate t = two_mode_template(kYig, 0.2);
        const BranchCurves c = compute_branches(t, linspace(0, 400, 401));
        const double hc = crossing_field(t, 0);
        CHECK(kind_of([&] { anticrossing_gap(c, {hc + 50.0, hc + 150.0}); }) == ErrorKind::NoMinimum);
    }
    SUBCASE("single branch")
    {
        SystemTemplate t;
        t.modes = {{{"r", 5.0, 0.1, 0.1}, std::nullopt}};
        const BranchCurves c = compute_branches(t, linspace(0, 10, 11));
        CHECK(kind_of([&] { anticrossing_gap(c, {0.0, 10.0}); }) == ErrorKind::NoMinimum);
    }
}

TEST_CASE("combined system shows two anticrossings at g1 and g2")
{
    const SystemTemplate t = combined_template();
    const BranchCurves c = compute_branches(t, linspace(20, 320, 3001));
    const auto p1 = anticrossing_gap(c, crossing_window(t, 0, 20, 320));
    const auto p2 = anticrossing_gap(c, crossing_window(t, 2, 20, 320));
    CHECK(rel_err(p1.g_estimate, 0.2) < 0.01);
    CHECK(rel_err(p2.g_estimate, 0.21) < 0.01);
    CHECK(p1.h_star > 200.0);
    CHECK(p2.h_star < 80.0);
}

TEST_CASE("thickness_sweep")
{
    const SystemTemplate base = combined_template();
    const std::vector<double> ts{5, 10, 20, 40, 60, 80, 100};

    SUBCASE("linear couplings per thickness, everything else fixed")
    {
        const ThicknessModel model{0.002, 0.05, 5, 100};
        const Crosslink link{0.5, 0.1};
        const auto out = thickness_sweep(base, model, link, ts);
        REQUIRE(out.size() == ts.size());
        for (const auto& [t, tmpl] : out) {
            CHECK(tmpl.coupling(1, 2) == doctest::Approx(0.002 * t + 0.05));
            CHECK(tmpl.coupling(0, 1) == doctest::Approx(0.5 * (0.002 * t + 0.05) + 0.1));
            CHECK(tmpl.coupling(0, 2) == 0.0);
            for (std::size_t k = 0; k < 3; ++k) {
                CHECK(tmpl.modes[k].spec.alpha == base.modes[k].spec.alpha);
                CHECK(tmpl.modes[k].spec.beta == base.modes[k].spec.beta);
                CHECK(tmpl.modes[k].spec.omega == base.modes[k].spec.omega);
            }
        }
    }
    SUBCASE("slope 0 gives identical templates")
    {
        const auto out = thickness_sweep(base, {0.0, 0.21, 5, 100}, {1.0, 0.0}, ts);
        for (const auto& [t, tmpl] : out) {
            CHECK(tmpl.couplings.size() == out.front().second.couplings.size());
            CHECK(tmpl.coupling(0, 1) == out.front().second.coupling(0, 1));
            CHECK(tmpl.coupling(1, 2) == out.front().second.coupling(1, 2));
        }
    }
    SUBCASE("m = 0 keeps g1 constant")
    {
        const auto out = thickness_sweep(base, {0.002, 0.05, 5, 100}, {0.0, 0.2}, ts);
        for (const auto& [t, tmpl] : out)
            CHECK(tmpl.coupling(0, 1) == 0.2);
    }
    SUBCASE("errors")
    {
        CHECK(kind_of([&] { thickness_sweep(base, {0.002, -0.05, 5, 100}, {0.5, 0.1}, ts); }) ==
              ErrorKind::NegativeCoupling);
        CHECK(kind_of([&] { thickness_sweep(base, {0.002, 0.05, 5, 100}, {-1.0, 0.1}, ts); }) ==
              ErrorKind::NegativeCoupling);
        CHECK(kind_of([&] { thickness_sweep(base, {0.002, 0.05, 5, 100}, {0.5, 0.1}, {120.0}); }) ==
              ErrorKind::InvalidGrid);
    }
    SUBCASE("gaps grow with thickness at both crossings")
    {
        const auto out = thickness_sweep(base, {0.002, 0.05, 5, 100}, {0.5, 0.1}, ts);
        const auto fields = linspace(20, 320, 1501);
        double prev1 = -1.0, prev2 = -1.0;
        for (const auto& [t, tmpl] : out) {
            const BranchCurves c = compute_branches(tmpl, fields);
            const double g1 = anticrossing_gap(c, crossing_window(tmpl, 0, 20, 320)).g_estimate;
            const double g2 = anticrossing_gap(c, crossing_window(tmpl, 2, 20, 320)).g_estimate;
            CHECK(g1 >= prev1);
            CHECK(g2 >= prev2);
            prev1 = g1;
            prev2 = g2;
        }
    }
}
