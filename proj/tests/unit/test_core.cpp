#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "magcouple/core/kittel.hpp"
#include "magcouple/core/response.hpp"
#include "magcouple/errors.hpp"
#include "support.hpp"

using namespace magcouple;
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

TEST_CASE("lambda_to_beta")
{
    CHECK(lambda_to_beta(0.0) == 0.0);
    CHECK(lambda_to_beta(1.0) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));
    // 2 pi * 0.25, frozen at 30 digits
    CHECK(rel_err(lambda_to_beta(0.5), 1.57079632679489661923) < 1e-15);
    CHECK(lambda_to_beta(-0.5) == lambda_to_beta(0.5));
}

TEST_CASE("kittel frequency of the built-in materials")
{
    CHECK(kittel_frequency(kYig, 0.0) == 0.0);
    // gamma * sqrt(h (h + 4 pi M)) evaluated in 30-digit arithmetic
    CHECK(rel_err(kittel_frequency(kYig, 1000.0), 29.1862981551275186722) < 1e-12);
    CHECK(rel_err(kittel_frequency(kPermalloy, 1000.0), 10.1419347266682800319) < 1e-12);
    CHECK(kind_of([] { kittel_frequency(kYig, -1.0); }) == ErrorKind::NegativeField);
}

TEST_CASE("field_for_frequency inverts the Kittel relation")
{
    CHECK(field_for_frequency(kYig, 0.0) == 0.0);
    CHECK(rel_err(field_for_frequency(kYig, 29.1862981551275186722), 1000.0) < 1e-12);
    CHECK(rel_err(field_for_frequency(kPermalloy, 10.1419347266682800319), 1000.0) < 1e-12);
    CHECK(kind_of([] { field_for_frequency(kYig, -0.1); }) == ErrorKind::NegativeFrequency);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> logh(-3.0, 5.0);
    for (int i = 0; i < 1000; ++i) {
        const double h = std::pow(10.0, logh(rng));
        for (const auto& m : {kYig, kPermalloy}) {
            const double w = kittel_frequency(m, h);
            CHECK(rel_err(kittel_frequency(m, field_for_frequency(m, w)), w) < 1e-9);
        }
    }
}

TEST_CASE("kittel frequency is strictly increasing for h > 0")
{
    double prev = kittel_frequency(kPermalloy, 1e-6);
    for (double h = 1e-3; h < 1e5; h *= 1.07) {
        const double w = kittel_frequency(kPermalloy, h);
        CHECK(w > prev);
        CHECK(kittel_slope(kPermalloy, h) > 0.0);
        prev = w;
    }
}

TEST_CASE("coupling hamiltonian entries")
{
    SUBCASE("decoupled lossless oscillators are diagonal")
    {
        const HybridSystem s({{"a", 1.0, 0, 0}, {"b", 2.0, 0, 0}, {"c", 3.0, 0, 0}}, {});
        const ComplexMatrix h = build_coupling_hamiltonian(s);
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                CHECK(h(j, k) == (j == k ? cplx(j + 1.0, 0.0) : cplx(0.0, 0.0)));
    }
    SUBCASE("single mode")
    {
        const HybridSystem s({{"m", 5.0, 0.1, 0.2}}, {});
        const ComplexMatrix h = build_coupling_hamiltonian(s);
        REQUIRE(h.rows() == 1);
        CHECK(h(0, 0).real() == 5.0);
        CHECK(h(0, 0).imag() == doctest::Approx(-0.3).epsilon(1e-15));
    }
    SUBCASE("canonical corners are purely dissipative")
    {
        const HybridSystem s = HybridSystem::canonical({"py", 3, 0.1, 0.04}, {"r", 5, 0.2, 0.09}, {"yig", 4, 0.3, 0.25},
                                                       0.2, 0.21);
        const ComplexMatrix h = build_coupling_hamiltonian(s);
        CHECK(h(0, 2).real() == 0.0);
        CHECK(h(0, 2).imag() == doctest::Approx(-std::sqrt(0.04 * 0.25)));
        CHECK(h(0, 1) == cplx(0.2, -std::sqrt(0.04 * 0.09)));
        CHECK(h(1, 2) == cplx(0.21, -std::sqrt(0.09 * 0.25)));
        CHECK(h(1, 1) == cplx(5.0, -(0.2 + 0.09)));
    }
    SUBCASE("complex symmetric, not Hermitian")
    {
        std::mt19937_64 rng(3);
        for (int i = 0; i < 50; ++i) {
            const ComplexMatrix h = build_coupling_hamiltonian(magcouple::testing::random_system(rng, false));
            CHECK(h == h.transpose());
            CHECK(h != h.adjoint());
        }
    }
    SUBCASE("invalid systems are rejected")
    {
        CHECK(kind_of([] { HybridSystem({{"m", 1.0, -0.1, 0.0}}, {}); }) == ErrorKind::InvalidSystem);
        CHECK(kind_of([] { HybridSystem({{"m", 1.0, 0.0, NAN}}, {}); }) == ErrorKind::InvalidSystem);
        CHECK(kind_of([] { HybridSystem({{"a", 1, 0, 0}, {"b", 1, 0, 0}}, {{0, 0, 0.1}}); }) == ErrorKind::InvalidSystem);
        CHECK(kind_of([] { HybridSystem({}, {}); }) == ErrorKind::InvalidSystem);
        const auto bad = HybridSystem::unchecked({{"m", 1.0, -0.1, 0.0}}, {});
        CHECK(kind_of([&] { build_coupling_hamiltonian(bad); }) == ErrorKind::InvalidSystem);
    }
}

TEST_CASE("s21 closed forms")
{
    SUBCASE("single mode on resonance gives -2 beta / (alpha + beta)")
    {
        for (auto [a, b] : {std::pair{0.1, 0.2}, {0.0, 0.5}, {0.3, 0.01}}) {
            const HybridSystem s({{"m", 4.2, a, b}}, {});
            CHECK(rel_err(s21(s, 4.2), cplx(-2.0 * b / (a + b), 0.0)) < 1e-14);
        }
    }
    SUBCASE("no stripline coupling means no signal")
    {
        const HybridSystem s = HybridSystem::canonical({"a", 3, 0.1, 0}, {"b", 5, 0.2, 0}, {"c", 4, 0.3, 0}, 0.2, 0.3);
        for (double w : {0.0, 3.0, 4.0, 5.0, 17.0})
            CHECK(s21(s, w) == cplx(0.0, 0.0));
    }
    SUBCASE("lossless invariant subspace probed at its eigenvalue is singular")
    {
        const HybridSystem s({{"a", 3.0, 0.1, 0.2}, {"b", 4.0, 0.0, 0.0}}, {});
        try {
            s21(s, 4.0);
            FAIL("expected SingularResponse");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::SingularResponse);
        }
        CHECK(std::isfinite(std::abs(s21(s, 4.1))));
    }
}

TEST_CASE("s21 is invariant under mode permutation")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> w(0.0, 12.0);
    for (int trial = 0; trial < 100; ++trial) {
        const HybridSystem s = magcouple::testing::random_system(rng, trial % 2 == 0);
        std::vector<std::size_t> perm{0, 1, 2};
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::size_t> inv(3);
        for (std::size_t i = 0; i < 3; ++i)
            inv[perm[i]] = i;
        std::vector<ModeSpec> modes;
        for (std::size_t i = 0; i < 3; ++i)
            modes.push_back(s.mode(perm[i]));
        std::vector<Coupling> cs;
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = a + 1; b < 3; ++b)
                cs.push_back({inv[a], inv[b], s.coupling(a, b)});
        const HybridSystem p(modes, cs);
        const double omega = w(rng);
        CHECK(rel_err(s21(s, omega), s21(p, omega)) < 1e-12);
    }
}

TEST_CASE("subunitarity |1 + s21| <= 1 over 10^4 random draws")
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> w(-5.0, 20.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const HybridSystem s = magcouple::testing::random_system(rng, i % 3 != 0);
        worst = std::max(worst, std::abs(1.0 + s21(s, w(rng))));
    }
    CHECK(worst <= 1.0 + 1e-9);
}

TEST_CASE("s21 decays at least as 1/omega")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const HybridSystem s = magcouple::testing::random_system(rng);
        double sum_beta = 0.0;
        for (const auto& m : s.modes())
            sum_beta += m.beta;
        for (double omega = 1e3; omega <= 1e9; omega *= 10.0) {
            // |S21| -> |B|^2 / omega = 2 sum(beta) / omega
            CHECK(std::abs(s21(s, omega)) * omega <= 1.01 * 2.0 * sum_beta);
            CHECK(std::abs(s21(s, -omega)) * omega <= 1.01 * 2.0 * sum_beta);
        }
    }
}

TEST_CASE("eigenbranches")
{
    SUBCASE("diagonal")
    {
        const HybridSystem s({{"c", 3.0, 0, 0}, {"a", 1.0, 0, 0}, {"b", 2.0, 0, 0}}, {});
        const auto ev = eigenbranches(s);
        REQUIRE(ev.size() == 3);
        for (int i = 0; i < 3; ++i)
            CHECK(ev[i] == cplx(i + 1.0, 0.0));
    }
    SUBCASE("degenerate lossless pair splits by exactly 2g")
    {
        for (double g : {0.11, 0.2, 0.21, 0.25}) {
            const auto ev = eigenbranches(HybridSystem({{"a", 5.0, 0, 0}, {"b", 5.0, 0, 0}}, {{0, 1, g}}));
            CHECK(ev[0].real() == doctest::Approx(5.0 - g).epsilon(1e-14));
            CHECK(ev[1].real() == doctest::Approx(5.0 + g).epsilon(1e-14));
            CHECK(ev[1].real() - ev[0].real() == doctest::Approx(2.0 * g).epsilon(1e-13));
        }
    }
    SUBCASE("arrow matrix: omega0 and omega0 +- sqrt(g1^2 + g2^2)")
    {
        const double w0 = 5.0, g1 = 0.2, g2 = 0.21;
        const auto ev =
            eigenbranches(HybridSystem::canonical({"a", w0, 0, 0}, {"r", w0, 0, 0}, {"b", w0, 0, 0}, g1, g2));
        const double r = std::sqrt(g1 * g1 + g2 * g2);
        CHECK(ev[0].real() == doctest::Approx(w0 - r).epsilon(1e-13));
        CHECK(ev[1].real() == doctest::Approx(w0).epsilon(1e-13));
        CHECK(ev[2].real() == doctest::Approx(w0 + r).epsilon(1e-13));
        for (const auto& e : ev)
            CHECK(std::abs(e.imag()) < 1e-13);
    }
    SUBCASE("passive and sorted on random damped systems")
    {
        std::mt19937_64 rng(99);
        for (int i = 0; i < 2000; ++i) {
            const auto ev = eigenbranches(magcouple::testing::random_system(rng, i % 2 == 0));
            for (std::size_t k = 0; k < ev.size(); ++k) {
                CHECK(ev[k].imag() <= 1e-12);
                if (k > 0)
                    CHECK((ev[k - 1].real() < ev[k].real() ||
                           (ev[k - 1].real() == ev[k].real() && ev[k - 1].imag() <= ev[k].imag())));
            }
        }
    }
    SUBCASE("ties in real part sort by imaginary part")
    {
        const auto ev = eigenbranches(HybridSystem({{"a", 2.0, 0.5, 0}, {"b", 2.0, 0.1, 0}}, {}));
        CHECK(ev[0] == cplx(2.0, -0.5));
        CHECK(ev[1] == cplx(2.0, -0.1));
    }
}
