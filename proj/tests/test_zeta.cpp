#include "ntlab/errors.hpp"
#include "ntlab/zeta.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace ntlab;

namespace {

// mpmath reference values (30 digits), truncated to double.
constexpr double kZeta2 = 1.6449340668482264;
constexpr double kZeta3 = 1.2020569031595943;
constexpr double kZeta4 = 1.0823232337111382;
constexpr double kGamma[] = {0.5772156649015329, -0.07281584548367672, -0.009690363192872318,
                             0.002053834420303346, 0.002325370065467300};
constexpr double kNegLogDeriv2 = 0.5699609930945328;  // -zeta'(2)/zeta(2)
constexpr double kNegLogDeriv4 = 0.06366976495537113; // -zeta'(4)/zeta(4)
constexpr double kRatio2 = 0.3464947347018022;        // -zeta'(2)/zeta(2)^2

const LaurentExpansionAtOne& expansion()
{
    static const LaurentExpansionAtOne e = stieltjes_constants(4, 1'000'000);
    return e;
}

// Limit definition with nothing but the trapezoid half-term, summed to 10^7.
double gamma_oracle(int k)
{
    const std::int64_t n_max = 10'000'000;
    long double s = 0.0L;
    for (std::int64_t n = 1; n <= n_max; ++n)
        s += std::pow(std::log(static_cast<long double>(n)), k) / static_cast<long double>(n);
    const long double ln = std::log(static_cast<long double>(n_max));
    return static_cast<double>(s - std::pow(ln, k + 1) / (k + 1) - 0.5L * std::pow(ln, k) / n_max);
}

Complex central_difference(Complex (*fn)(Complex, const LaurentExpansionAtOne&), Complex s, double h)
{
    return (fn(s + h, expansion()) - fn(s - h, expansion())) / (2.0 * h);
}

} // namespace

TEST_CASE("zeta_em at integers")
{
    CHECK(std::abs(zeta_em(2.0).value - kZeta2) < 1e-12);
    CHECK(std::abs(zeta_em(3.0).value - kZeta3) < 1e-12);
    CHECK(std::abs(zeta_em(4.0).value - kZeta4) < 1e-12);
    CHECK(std::abs(zeta_em(2.0, 10).value - kZeta2) < 1e-10);
    // Direct summation oracle.
    CHECK(std::abs(zeta_em(2.0).value - oracle::zeta_direct(2.0, 100'000)) < 1e-10);
}

TEST_CASE("zeta_em accuracy target for real s >= 1.5")
{
    for (double s : {1.5, 1.75, 2.5, 6.0}) {
        const auto ev = zeta_em(s, 1'000'000);
        CHECK(std::abs(ev.value - oracle::zeta_direct(s, 2'000'000)) < 1e-9);
        CHECK(ev.tail_bound >= 0.0);
        CHECK(std::abs(zeta_em(s, 100).value - ev.value) < 1e-10);
    }
}

TEST_CASE("zeta_em tail bound decreases with terms")
{
    const Complex s(2.0, 3.0);
    double prev = INFINITY;
    for (std::int64_t n : {10, 100, 1000, 10'000}) {
        const auto ev = zeta_em(s, n);
        CHECK(ev.tail_bound < prev);
        CHECK(ev.terms_used == n);
        prev = ev.tail_bound;
    }
    CHECK(std::abs(zeta_em(s, 10).value - zeta_em(s, 10'000).value) <= zeta_em(s, 10).tail_bound);
}

TEST_CASE("zeta_em domain")
{
    CHECK_THROWS_AS(zeta_em(1.2), DomainError);
    CHECK_THROWS_AS(zeta_em(Complex(1.0, 5.0)), DomainError);
    CHECK_THROWS_AS(zeta_em(0.5), DomainError);
    CHECK_THROWS_AS(zeta_em(2.0, 0), UsageError);
    CHECK_THROWS_AS(zeta_em(Complex(NAN, 0.0)), DomainError);
}

TEST_CASE("zeta_prime_em agrees with finite differences")
{
    for (Complex s : {Complex(2.0, 0.0), Complex(3.0, 0.0), Complex(1.7, 2.0)}) {
        const double h = 1e-5;
        const Complex fd = (zeta_em(s + h).value - zeta_em(s - h).value) / (2.0 * h);
        CHECK(std::abs(zeta_prime_em(s).value - fd) < 1e-8);
    }
    CHECK(std::abs(-zeta_prime_em(2.0).value / zeta_em(2.0).value - kNegLogDeriv2) < 1e-12);
}

TEST_CASE("Stieltjes constants")
{
    const auto& e = expansion();
    REQUIRE(e.order() == 4);
    for (int k = 0; k <= 4; ++k)
        CHECK(std::abs(e.stieltjes()[static_cast<std::size_t>(k)] - kGamma[k]) < 1e-10);
    CHECK(e.pole_coefficient() == 1.0);

    // Limit-definition oracle summed in long double.
    CHECK(std::abs(stieltjes_constants(0, 10'000).stieltjes()[0] - gamma_oracle(0)) < 1e-8);
    CHECK(std::abs(stieltjes_constants(1, 10'000).stieltjes()[1] - gamma_oracle(1)) < 1e-7);

    // Orders below 2 still carry gamma_0..gamma_2.
    CHECK(stieltjes_constants(0, 10'000).order() == 2);
    CHECK_THROWS_AS(stieltjes_constants(5, 10'000), UnsupportedOrderError);
    CHECK_THROWS_AS(stieltjes_constants(2, 9'999), UsageError);
    CHECK_THROWS_AS(LaurentExpansionAtOne({0.5, 0.1}), UsageError);
}

TEST_CASE("zeta_taylor_eval")
{
    // Independent evaluation in the overlap region.
    const Complex z = zeta_taylor_eval(1.4, expansion());
    CHECK(std::abs(z - oracle::zeta_direct(1.4, 1'000'000)) < 1e-6);
    // gamma_0..gamma_2 alone leave the gamma_3 term, about 2e-5 at |s-1| = 0.4.
    const Complex z2 = zeta_taylor_eval(1.4, expansion().truncated(2));
    CHECK(std::abs(z2 - oracle::zeta_direct(1.4, 1'000'000)) < 1e-4);

    for (double h : {1e-2, 1e-4, 1e-6})
        CHECK(std::abs(h * zeta_taylor_eval(1.0 + h, expansion()) - 1.0) < 2.0 * h);

    CHECK_THROWS_AS(zeta_taylor_eval(1.0, expansion()), PoleError);
    CHECK_THROWS_AS(zeta_taylor_eval(1.5, expansion()), DomainError);
    CHECK_THROWS_AS(zeta_taylor_eval(Complex(1.0, 0.6), expansion()), DomainError);
}

TEST_CASE("Taylor and Euler-Maclaurin agree on the overlap annulus")
{
    for (double r : {0.41, 0.45, 0.49}) {
        for (double angle : {0.0, 0.5, 1.0, 1.4, -1.2}) {
            const Complex s = 1.0 + std::polar(r, angle);
            if (s.real() <= 1.0)
                continue;
            CHECK(std::abs(zeta_taylor_eval(s, expansion()) - oracle::zeta_direct(s, 1'000'000)) < 1e-6);
        }
    }
}

TEST_CASE("zeta_prime_taylor_eval")
{
    const double h = 1e-5;
    const Complex s = 1.4;
    const Complex fd = central_difference(zeta_taylor_eval, s, h);
    const Complex d = zeta_prime_taylor_eval(s, expansion());
    CHECK(std::abs(d - fd) < 1e-5 * std::abs(d));

    for (double r : {0.05, 0.1, 0.2, 0.3, 0.4}) {
        for (double angle : {0.0, 1.0, 2.5, -2.0}) {
            const Complex z = 1.0 + std::polar(r, angle);
            const Complex dz = zeta_prime_taylor_eval(z, expansion());
            REQUIRE(std::abs(dz - central_difference(zeta_taylor_eval, z, h)) < 1e-5 * std::abs(dz));
        }
    }

    for (double e : {1e-2, 1e-4})
        CHECK(std::abs(e * e * zeta_prime_taylor_eval(1.0 + e, expansion()) + 1.0) < 2.0 * e * e);
    CHECK_THROWS_AS(zeta_prime_taylor_eval(1.0, expansion()), PoleError);
}

TEST_CASE("neg_zeta_prime_over_zeta_sq")
{
    CHECK(neg_zeta_prime_over_zeta_sq(1.0, expansion()) == Complex(1.0, 0.0));
    CHECK(std::abs(neg_zeta_prime_over_zeta_sq(2.0, expansion()) - kRatio2) < 1e-12);
    CHECK(std::abs(neg_zeta_prime_over_zeta_sq(1.0 + 1e-6, expansion()) - 1.0) < 1e-4);
    CHECK_THROWS_AS(neg_zeta_prime_over_zeta_sq(0.9, expansion()), DomainError);

    // Continuity across the switch between the two evaluation routes.
    const Complex inside = neg_zeta_prime_over_zeta_sq(1.5 - 1e-9, expansion());
    const Complex outside = neg_zeta_prime_over_zeta_sq(1.5 + 1e-9, expansion());
    CHECK(std::abs(inside - outside) < 1e-6);

    // Bounded on the approach to 1 and converging monotonically to 1.
    double prev_gap = INFINITY;
    for (int k = 1; k <= 6; ++k) {
        const double v = neg_zeta_prime_over_zeta_sq(1.0 + std::pow(10.0, -k), expansion()).real();
        REQUIRE(std::isfinite(v));
        const double gap = std::abs(v - 1.0);
        if (k >= 2)
            REQUIRE(gap < prev_gap);
        prev_gap = gap;
    }
    // On the line Re s = 1 away from s = 1 the Euler-Maclaurin route is used.
    CHECK(std::isfinite(std::abs(neg_zeta_prime_over_zeta_sq(Complex(1.0, 2.0), expansion()))));
}

TEST_CASE("lambda_series_partial")
{
    const SieveTables t = build_sieve(1'000'000);
    CHECK(lambda_series_partial(2.0, 1, t).value == Complex(0.0, 0.0));

    const auto s2 = lambda_series_partial(2.0, 1'000'000, t);
    CHECK(std::abs(s2.value - 0.5699599927023042) < 1e-12);
    CHECK(std::abs(s2.value - kNegLogDeriv2) < 1e-4);
    CHECK(std::abs(s2.value - kNegLogDeriv2) <= s2.tail_bound);

    const auto s4 = lambda_series_partial(4.0, 1000, t);
    CHECK(std::abs(s4.value - kNegLogDeriv4) <= s4.tail_bound);

    // Identity: L(s) zeta(s) + zeta'(s) -> 0, with zeta' by finite differences.
    for (double s : {2.0, 3.0, 4.0}) {
        const double h = 1e-5;
        const Complex zp = (zeta_em(s + h).value - zeta_em(s - h).value) / (2.0 * h);
        const Complex residual = lambda_series_partial(s, 1'000'000, t).value * zeta_em(s).value + zp;
        CHECK(std::abs(residual) < 1e-4);
    }

    CHECK_THROWS_AS(lambda_series_partial(1.0, 10, t), DomainError);
    CHECK_THROWS_AS(lambda_series_partial(2.0, 1'000'001, t), RangeError);
}
