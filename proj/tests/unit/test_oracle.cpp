#include <doctest.h>

#include <cmath>
#include <random>

#include "magcouple/core/response.hpp"
#include "magcouple/errors.hpp"
#include "magcouple/oracle/oracle.hpp"
#include "support.hpp"

using namespace magcouple;
using magcouple::testing::combined_template;
using magcouple::testing::random_system;
using magcouple::testing::rel_err;

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

}  // namespace

TEST_CASE("sum-form oracle closed forms")
{
    const HybridSystem zero = HybridSystem::canonical({"a", 3, 0.1, 0}, {"b", 5, 0.2, 0}, {"c", 4, 0.3, 0}, 0.2, 0.3);
    CHECK(s21_sum_oracle(zero, 4.5) == cplx(0.0, 0.0));

    const HybridSystem one({{"m", 4.2, 0.1, 0.3}}, {});
    CHECK(rel_err(s21_sum_oracle(one, 4.2), cplx(-2.0 * 0.3 / 0.4, 0.0)) < 1e-14);
}

TEST_CASE("oracles agree with s21 on random systems")
{
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> w(0.0, 12.0);
    double worst_sum = 0.0, worst_cramer = 0.0;
    for (int i = 0; i < 100; ++i) {
        const HybridSystem s = random_system(rng, i % 2 == 0);
        for (int k = 0; k < 10; ++k) {
            const double omega = w(rng);
            const cplx ref = s21(s, omega);
            worst_sum = std::max(worst_sum, rel_err(ref, s21_sum_oracle(s, omega)));
            worst_cramer = std::max(worst_cramer, rel_err(ref, s21_cramer_oracle(s, omega)));
        }
    }
    CHECK(worst_sum < 1e-12);
    CHECK(worst_cramer < 1e-10);
}

TEST_CASE("combined template at 1000 random frequencies")
{
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> w(3.0, 7.0), h(20.0, 320.0);
    const SystemTemplate t = combined_template();
    for (int i = 0; i < 1000; ++i) {
        const HybridSystem s = instantiate(t, h(rng));
        const double omega = w(rng);
        const cplx ref = s21(s, omega);
        CHECK(rel_err(ref, s21_sum_oracle(s, omega)) < 1e-12);
        CHECK(rel_err(ref, s21_cramer_oracle(s, omega)) < 1e-10);
    }
}

TEST_CASE("diagonal system evaluated both ways")
{
    // one driven mode keeps the dissipative cross terms at zero
    const HybridSystem s({{"a", 3.0, 0.1, 0.2}, {"b", 5.0, 0.05, 0.0}, {"c", 7.0, 0.2, 0.0}}, {});
    for (double omega : {2.0, 3.0, 4.5, 7.1}) {
        cplx expected = 0.0;
        for (const auto& m : s.modes())
            expected += 2.0 * m.beta / (cplx(0.0, 1.0) * (omega - cplx(m.omega, -(m.alpha + m.beta))));
        CHECK(rel_err(s21_cramer_oracle(s, omega), expected) < 1e-14);
        CHECK(rel_err(s21_sum_oracle(s, omega), expected) < 1e-14);
    }
}

TEST_CASE("singular systems are reported by every route")
{
    // a lossless mode decoupled from the line, probed on its resonance
    const HybridSystem s({{"a", 3.0, 0.1, 0.2}, {"b", 4.0, 0.0, 0.0}, {"c", 6.0, 0.1, 0.1}}, {});
    CHECK(kind_of([&] { s21(s, 4.0); }) == ErrorKind::SingularResponse);
    CHECK(kind_of([&] { s21_sum_oracle(s, 4.0); }) == ErrorKind::SingularResponse);
    CHECK(kind_of([&] { s21_cramer_oracle(s, 4.0); }) == ErrorKind::SingularResponse);
}

TEST_CASE("cramer oracle requires three modes")
{
    const HybridSystem s({{"a", 3.0, 0.1, 0.2}}, {});
    CHECK(kind_of([&] { s21_cramer_oracle(s, 3.0); }) == ErrorKind::InvalidSystem);
}

TEST_CASE("passivity_check")
{
    SUBCASE("lossless decoupled system has exactly zero imaginary parts")
    {
        const HybridSystem s({{"a", 1.0, 0, 0}, {"b", 2.0, 0, 0.0}}, {});
        const auto r = passivity_check(s, {0.5, 1.5, 2.5});
        CHECK(r.max_imag_eigenvalue == 0.0);
        CHECK(r.ok());
    }
    SUBCASE("random damped systems raise no flags")
    {
        std::mt19937_64 rng(8);
        std::uniform_real_distribution<double> w(0.0, 12.0);
        for (int i = 0; i < 2000; ++i) {
            std::vector<double> omegas;
            for (int k = 0; k < 5; ++k)
                omegas.push_back(w(rng));
            const auto r = passivity_check(random_system(rng, i % 2 == 0), omegas);
            CHECK(r.ok());
            CHECK(r.max_imag_eigenvalue <= 1e-12);
        }
    }
    SUBCASE("negative intrinsic damping is flagged, not thrown")
    {
        const auto s = HybridSystem::unchecked({{"gain", 5.0, -0.3, 0.1}}, {});
        const auto r = passivity_check(s, {4.9, 5.0, 5.1});
        CHECK(r.eigen_violation);
        CHECK(r.unitary_violation);
        CHECK(r.max_imag_eigenvalue == doctest::Approx(0.2));
        CHECK(!r.ok());
    }
    SUBCASE("singular samples are skipped")
    {
        const HybridSystem s({{"a", 3.0, 0.0, 0.0}}, {});
        const auto r = passivity_check(s, {3.0});
        CHECK(r.ok());
    }
}

TEST_CASE("splitmix64 is a pure function of seed and counter")
{
    CHECK(splitmix64(1, 5) == splitmix64(1, 5));
    CHECK(splitmix64(1, 5) != splitmix64(1, 6));
    CHECK(splitmix64(1, 5) != splitmix64(2, 5));
    // reference value of the standard SplitMix64 stream seeded with 0: first output
    CHECK(splitmix64(0, 0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("gaussian noise statistics")
{
    const std::uint64_t n = 200000;
    double sr = 0, si = 0, srr = 0, sii = 0, sri = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
        const cplx z = gaussian_pair(99, k);
        sr += z.real();
        si += z.imag();
        srr += z.real() * z.real();
        sii += z.imag() * z.imag();
        sri += z.real() * z.imag();
    }
    CHECK(std::abs(sr / n) < 0.01);
    CHECK(std::abs(si / n) < 0.01);
    CHECK(std::abs(std::sqrt(srr / n) - 1.0) < 0.03);
    CHECK(std::abs(std::sqrt(sii / n) - 1.0) < 0.03);
    CHECK(std::abs(sri / n) < 0.01);
}

TEST_CASE("synth_map")
{
    const SystemTemplate t = combined_template();
    const auto fields = linspace(20, 320, 41);
    const auto freqs = linspace(4, 6, 51);

    SUBCASE("sigma = 0 is compute_map")
    {
        CHECK(synth_map(t, fields, freqs, {0.0, 42}) == compute_map(t, fields, freqs));
    }
    SUBCASE("same seed, same map")
    {
        CHECK(synth_map(t, fields, freqs, {0.01, 42}) == synth_map(t, fields, freqs, {0.01, 42}));
        CHECK(!(synth_map(t, fields, freqs, {0.01, 42}) == synth_map(t, fields, freqs, {0.01, 43})));
    }
    SUBCASE("noise has the requested scale")
    {
        const double sigma = 0.02;
        const SpectrumMap clean = compute_map(t, fields, freqs);
        const SpectrumMap noisy = synth_map(t, fields, freqs, {sigma, 7});
        double ss = 0.0;
        for (std::size_t k = 0; k < clean.values.size(); ++k)
            ss += std::norm(noisy.values[k] - clean.values[k]);
        const double est = std::sqrt(ss / (2.0 * clean.values.size()));
        CHECK(std::abs(est / sigma - 1.0) < 0.03);
    }
    SUBCASE("negative sigma")
    {
        CHECK(kind_of([&] { synth_map(t, fields, freqs, {-1.0, 1}); }) == ErrorKind::Config);
    }
}
