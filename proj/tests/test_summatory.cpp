#include "ntlab/errors.hpp"
#include "ntlab/summatory.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace ntlab;

namespace {

const SieveTables& tables_1e6()
{
    static const SieveTables t = build_sieve(1'000'000);
    return t;
}

CoefficientSeries random_series(std::int64_t n, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    return CoefficientSeries::generate(n, [&](std::int64_t) { return dist(rng); });
}

} // namespace

TEST_CASE("chebyshev_psi")
{
    const auto& t = tables_1e6();
    CHECK(chebyshev_psi(1, t) == 0.0);
    // 3 log 2 + 2 log 3 + log 5 + log 7
    CHECK(chebyshev_psi(10, t) == doctest::Approx(7.832014180505469).epsilon(1e-14));
    CHECK(chebyshev_psi(100, t) == doctest::Approx(94.0453112293574).epsilon(1e-14));
    CHECK(chebyshev_psi(1'000'000, t) == doctest::Approx(999586.5974956311).epsilon(1e-13));
    CHECK_THROWS_AS(chebyshev_psi(0, t), RangeError);
    CHECK_THROWS_AS(chebyshev_psi(1'000'001, t), RangeError);

    double prev = 0.0;
    for (std::int64_t x = 1; x <= 5000; ++x) {
        const double v = chebyshev_psi(x, t);
        REQUIRE(v >= prev);
        prev = v;
    }
}

TEST_CASE("psi_ap")
{
    const auto& t = tables_1e6();
    CHECK(psi_ap(10, 2, 0, t) == doctest::Approx(3.0 * std::log(2.0)).epsilon(1e-14));
    CHECK(psi_ap(10, 3, 1, t) == doctest::Approx(std::log(2.0) + std::log(7.0)).epsilon(1e-14));
    CHECK(psi_ap(12345, 1, 0, t) == doctest::Approx(chebyshev_psi(12345, t)).epsilon(1e-15));
    CHECK_THROWS_AS(psi_ap(10, 3, 3, t), NormalizationError);
    CHECK_THROWS_AS(psi_ap(10, 3, -1, t), NormalizationError);
    CHECK_THROWS_AS(psi_ap(10, 0, 0, t), RangeError);
}

TEST_CASE("psi and pi partition over residues")
{
    const auto& t = tables_1e6();
    for (std::int64_t q = 1; q <= 12; ++q) {
        for (std::int64_t x : {1, 2, 10, 97, 1234, 54321, 100'000}) {
            double psi_total = 0.0;
            std::int64_t pi_coprime = 0;
            for (std::int64_t a = 0; a < q; ++a) {
                psi_total += psi_ap(x, q, a, t);
                if (std::gcd(a, q) == 1)
                    pi_coprime += prime_pi_ap(x, q, a, t);
            }
            REQUIRE(psi_total == doctest::Approx(chebyshev_psi(x, t)).epsilon(1e-12));
            std::int64_t dividing = 0;
            for (std::int64_t p = 2; p <= std::min(x, q); ++p)
                dividing += (t.is_prime(p) && q % p == 0) ? 1 : 0;
            REQUIRE(prime_pi(x, t) == pi_coprime + dividing);
        }
    }
}

TEST_CASE("psi_series matches pointwise evaluation")
{
    const auto& t = tables_1e6();
    const std::vector<std::int64_t> grid = {5, 100, 1000, 77777};
    const auto whole = psi_series(grid, t);
    const auto prog = psi_series(grid, t, Progression{4, 3});
    REQUIRE(whole.values.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(whole.values[i].second == doctest::Approx(chebyshev_psi(grid[i], t)).epsilon(1e-15));
        CHECK(prog.values[i].second == doctest::Approx(psi_ap(grid[i], 4, 3, t)).epsilon(1e-15));
    }
    CHECK(prog.progression->modulus == 4);
}

TEST_CASE("prime counts")
{
    const auto& t = tables_1e6();
    CHECK(prime_pi(1, t) == 0);
    CHECK(prime_pi(2, t) == 1);
    CHECK(prime_pi(10, t) == 4);
    CHECK(prime_pi_ap(10, 4, 1, t) == 1);
    CHECK(prime_pi_ap(10, 4, 3, t) == 2);
    CHECK(prime_pi_ap(54321, 1, 0, t) == prime_pi(54321, t));

    const auto is_prime = oracle::eratosthenes(1'000'000);
    std::int64_t count = 0;
    for (std::int64_t x = 1; x <= 1'000'000; ++x) {
        count += is_prime[static_cast<std::size_t>(x)];
        if (x % 9973 == 0 || x == 1'000'000)
            REQUIRE(prime_pi(x, t) == count);
    }
    CHECK(count == 78498);
    CHECK(prime_pi(1'000'000, t) == 78498);
}

TEST_CASE("pi_via_partial_summation reproduces pi(x)")
{
    const auto& t = tables_1e6();
    CHECK(pi_via_partial_summation(2, t) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(pi_via_partial_summation(10, t) - 4.0) < 1e-9);
    CHECK(std::abs(pi_via_partial_summation(100, t) - 25.0) < 1e-9);
    CHECK_THROWS_AS(pi_via_partial_summation(1, t), RangeError);
    for (std::int64_t x : geometric_grid(1'000'000, 2, 2)) {
        const auto exact = static_cast<double>(prime_pi(x, t));
        REQUIRE(std::abs(pi_via_partial_summation(x, t) - exact) <= 1e-6 * exact);
    }
}

TEST_CASE("mertens")
{
    const auto& t = tables_1e6();
    CHECK(mertens(1, t) == 1);
    CHECK(mertens(2, t) == 0);
    CHECK(mertens(10, t) == -1);
    CHECK(mertens(1000, t) == 2);
    CHECK(mertens(10'000, t) == -23);
    CHECK(mertens(100'000, t) == -48);
    CHECK(mertens(1'000'000, t) == 212);
}

TEST_CASE("dirichlet_convolution examples")
{
    const auto& t = tables_1e6();
    const std::int64_t n = 200;
    const auto mu = mobius_series(t, n);
    const auto one = ones_series(n);
    const auto e = dirichlet_convolution(mu, one);
    for (std::int64_t k = 1; k <= n; ++k)
        REQUIRE(e[k] == (k == 1 ? 1.0 : 0.0));

    const auto d = dirichlet_convolution(one, one);
    CHECK(d[6] == 4.0);
    CHECK(d[12] == 6.0);

    const auto ml = dirichlet_convolution(mu, mangoldt_series(t, n));
    CHECK(std::abs(ml[12]) < 1e-15);
    CHECK(ml[1] == 0.0);

    CHECK_THROWS_AS(dirichlet_convolution(ones_series(5), ones_series(6)), ShapeError);
}

TEST_CASE("dirichlet_convolution is commutative and associative")
{
    std::mt19937_64 rng(20240607);
    for (std::int64_t n : {1, 7, 64, 511, 512}) {
        const auto f = random_series(n, rng);
        const auto g = random_series(n, rng);
        const auto h = random_series(n, rng);
        const auto fg = dirichlet_convolution(f, g);
        const auto gf = dirichlet_convolution(g, f);
        const auto left = dirichlet_convolution(fg, h);
        const auto right = dirichlet_convolution(f, dirichlet_convolution(g, h));
        for (std::int64_t k = 1; k <= n; ++k) {
            REQUIRE(std::abs(fg[k] - gf[k]) < 1e-9);
            REQUIRE(std::abs(left[k] - right[k]) < 1e-9);
        }
    }
}

TEST_CASE("MobiusPair relation")
{
    const auto pair = MobiusPair::from_g(CoefficientSeries::generate(300, [](std::int64_t d) { return 1.0 / static_cast<double>(d); }));
    CHECK(pair.holds());
    // sigma(12)/12 = 28/12
    CHECK(pair.f[12] == doctest::Approx(28.0 / 12.0));
    CHECK_THROWS_AS(CoefficientSeries(std::vector<double>{1.0, NAN}), UsageError);
}

TEST_CASE("conv_summatory equals the naive double loop for x <= 10^4")
{
    const auto& t = tables_1e6();
    CHECK(conv_summatory(1, t) == 0.0);
    CHECK(std::abs(conv_summatory(10, t) - oracle::conv_summatory_naive(10)) < 1e-9);

    const std::int64_t x_max = 10'000;
    std::vector<double> mu(x_max + 1), lam(x_max + 1);
    for (std::int64_t n = 1; n <= x_max; ++n) {
        mu[static_cast<std::size_t>(n)] = oracle::mobius_trial(n);
        lam[static_cast<std::size_t>(n)] = oracle::mangoldt_trial(n);
    }
    double running = 0.0;
    for (std::int64_t n = 1; n <= x_max; ++n) {
        for (std::int64_t d = 1; d <= n; ++d)
            if (n % d == 0)
                running += mu[static_cast<std::size_t>(d)] * lam[static_cast<std::size_t>(n / d)];
        REQUIRE(std::abs(conv_summatory(n, t) - running) < 1e-9);
    }
}

TEST_CASE("conv_summatory trend and frozen values")
{
    const auto& t = tables_1e6();
    const double s3 = conv_summatory(1000, t);
    const double s6 = conv_summatory(1'000'000, t);
    CHECK(s3 == doctest::Approx(-23.540405216520686).epsilon(1e-10));
    CHECK(s6 == doctest::Approx(-2965.722121381367).epsilon(1e-10));
    CHECK(std::abs(s6) / 1e6 < std::abs(s3) / 1e3);
}

TEST_CASE("mean_value_estimate")
{
    const auto& t = tables_1e6();
    const std::vector<std::int64_t> grid = {10, 1000, 100'000};

    const auto ones = mean_value_estimate(ones_series(100'000), grid, 1.0);
    for (const auto& c : ones.checkpoints) {
        CHECK(c.normalized == 1.0);
        CHECK(*c.deviation == 0.0);
    }

    const auto lam = mean_value_estimate(mangoldt_series(t, 1'000'000), geometric_grid(1'000'000), 1.0);
    CHECK(std::abs(lam.checkpoints.back().normalized - 1.0) < 1e-3);

    const auto sigma = MobiusPair::from_g(
        CoefficientSeries::generate(1'000'000, [](std::int64_t d) { return 1.0 / static_cast<double>(d); }));
    const double zeta2 = 1.6449340668482264;
    const auto sr = mean_value_estimate(sigma.f, geometric_grid(1'000'000), zeta2);
    CHECK(std::abs(*sr.checkpoints.back().deviation) < 1e-5);

    // Without a prediction the final checkpoint is the reference.
    const auto rel = mean_value_estimate(ones_series(1000), std::vector<std::int64_t>{10, 1000});
    CHECK_FALSE(rel.predicted_limit.has_value());
    CHECK(*rel.checkpoints.back().deviation == 0.0);

    CHECK_THROWS_AS(mean_value_estimate(ones_series(10), std::vector<std::int64_t>{}), UsageError);
    CHECK_THROWS_AS(mean_value_estimate(ones_series(10), std::vector<std::int64_t>{5, 5}), UsageError);
    CHECK_THROWS_AS(mean_value_estimate(ones_series(10), std::vector<std::int64_t>{11}), UsageError);
}

TEST_CASE("power_sum_ap")
{
    auto ps = power_sum_ap(10, 3, 1);
    CHECK(ps.exact == 22);
    CHECK(ps.leading == doctest::Approx(100.0 / 6.0));
    ps = power_sum_ap(10, 1, 0);
    CHECK(ps.exact == 55);
    CHECK(ps.leading == 50.0);
    CHECK(power_sum_ap(10, 7, 11).exact == 0);
    CHECK(power_sum_ap(10, 3, 10).exact == 10);
    CHECK_THROWS_AS(power_sum_ap(10, 0, 1), RangeError);

    // Brute-force enumeration of {qm + a : m >= 0} for every x <= 10^4.
    for (std::int64_t q = 1; q <= 50; ++q) {
        for (std::int64_t a = 0; a < q; ++a) {
            std::int64_t running = 0;
            for (std::int64_t x = 1; x <= 10'000; ++x) {
                if (x >= a && (x - a) % q == 0)
                    running += x;
                REQUIRE(power_sum_ap(x, q, a).exact == running);
            }
        }
    }
}

TEST_CASE("abel_summation recovers sums")
{
    const auto& t = tables_1e6();

    // R constant c: only f(1) = c is nonzero.
    std::vector<double> constant(50, 2.5);
    CHECK(abel_summation(constant) == doctest::Approx(2.5));

    const std::int64_t x = 1'000'000;
    std::vector<double> harmonic(static_cast<std::size_t>(x));
    std::vector<double> mu_over_n(static_cast<std::size_t>(x));
    double h = 0.0;
    double m = 0.0;
    for (std::int64_t n = 1; n <= x; ++n) {
        h += 1.0 / static_cast<double>(n);
        m += t.mu(n) / static_cast<double>(n);
        harmonic[static_cast<std::size_t>(n - 1)] = h;
        mu_over_n[static_cast<std::size_t>(n - 1)] = m;
    }
    CHECK(std::abs(abel_summation(harmonic) - static_cast<double>(x)) < 1e-6 * static_cast<double>(x));
    const double mert = static_cast<double>(mertens(x, t));
    CHECK(std::abs(abel_summation(mu_over_n) - mert) < 1e-6 * std::abs(mert));

    // Weight 1/t: R(t) = sum n f(n) with f = 1 gives back x.
    std::vector<double> triangular(1000);
    for (std::size_t i = 0; i < triangular.size(); ++i)
        triangular[i] = static_cast<double>((i + 1) * (i + 2) / 2);
    const double back = abel_summation(triangular, [](std::int64_t s) { return 1.0 / static_cast<double>(s); });
    CHECK(back == doctest::Approx(1000.0).epsilon(1e-12));

    CHECK_THROWS_AS(abel_summation(std::vector<double>{}), UsageError);
}

TEST_CASE("geometric_grid")
{
    CHECK(geometric_grid(1'000'000) == std::vector<std::int64_t>{1000, 10'000, 100'000, 1'000'000});
    CHECK(geometric_grid(100) == std::vector<std::int64_t>{100});
    CHECK(geometric_grid(5000) == std::vector<std::int64_t>{1000, 5000});
    CHECK(geometric_grid(4096, 2) == std::vector<std::int64_t>{1024, 2048, 4096});
    CHECK_THROWS_AS(geometric_grid(100, 1), UsageError);
}

TEST_CASE("make_report deviation convention")
{
    const auto r = make_report("d", 1.0, {{10, 5.0, 1.5, std::nullopt}, {20, 5.0, 0.25, std::nullopt}});
    CHECK(*r.checkpoints[0].deviation == 0.5);
    CHECK(*r.checkpoints[1].deviation == -0.75);
    CHECK_THROWS_AS(make_report("d", 1.0, {{10, 0, 0, std::nullopt}, {10, 0, 0, std::nullopt}}), UsageError);
}
