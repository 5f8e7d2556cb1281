#include "ntlab/arith.hpp"

#include "ntlab/errors.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <string>

namespace ntlab {

namespace {

__extension__ using Int128 = __int128;

void require_in_table(std::int64_t n, const SieveTables& tables, const char* what)
{
    if (n < 1 || n > tables.limit())
        throw RangeError(std::string(what) + ": n = " + std::to_string(n) + " outside 1.." +
                         std::to_string(tables.limit()));
}

void require_modulus(std::int64_t q, const char* what)
{
    if (q < 1)
        throw RangeError(std::string(what) + ": modulus must be >= 1, got " + std::to_string(q));
}

} // namespace

SieveTables build_sieve(std::int64_t limit, SieveOptions options)
{
    const std::int64_t ceiling = options.allow_large ? kHardSieveCeiling : kDefaultSieveCeiling;
    if (limit < 1)
        throw SizeError("sieve limit must be >= 1, got " + std::to_string(limit));
    if (limit > ceiling)
        throw SizeError("sieve limit " + std::to_string(limit) + " exceeds ceiling " +
                        std::to_string(ceiling) +
                        (options.allow_large ? std::string() : std::string(" (see allow_large)")));

    const auto n_max = static_cast<std::size_t>(limit);
    SieveTables t;
    t.limit_ = limit;
    t.spf_.assign(n_max + 1, 0);
    t.mu_.assign(n_max + 1, 0);
    t.exponent_.assign(n_max + 1, 0);
    t.mu_[1] = 1;
    if (n_max >= 1)
        t.spf_[1] = 1;

    // Every composite i*p is written exactly once, from its smallest prime p.
    for (std::size_t i = 2; i <= n_max; ++i) {
        if (t.spf_[i] == 0) {
            t.spf_[i] = static_cast<std::uint32_t>(i);
            t.mu_[i] = -1;
            t.exponent_[i] = 1;
            t.primes_.push_back(static_cast<std::uint32_t>(i));
        }
        const std::uint32_t spf_i = t.spf_[i];
        for (std::uint32_t p : t.primes_) {
            const std::size_t m = i * p;
            if (p > spf_i || m > n_max)
                break;
            t.spf_[m] = p;
            if (p == spf_i) {
                t.mu_[m] = 0;
                t.exponent_[m] = t.exponent_[i] == 0 ? 0 : static_cast<std::uint8_t>(t.exponent_[i] + 1);
            } else {
                t.mu_[m] = static_cast<std::int8_t>(-t.mu_[i]);
            }
        }
    }
    return t;
}

int mobius(std::int64_t n, const SieveTables& tables)
{
    require_in_table(n, tables, "mobius");
    return tables.mu(n);
}

double mangoldt(std::int64_t n, const SieveTables& tables)
{
    require_in_table(n, tables, "mangoldt");
    return tables.lambda(n);
}

Factorization factorize(std::int64_t n, const SieveTables& tables)
{
    require_in_table(n, tables, "factorize");
    Factorization f{n, {}};
    while (n > 1) {
        const std::int64_t p = tables.smallest_prime_factor(n);
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.factors.emplace_back(p, e);
    }
    return f;
}

Factorization factorize(std::int64_t n)
{
    if (n < 1)
        throw RangeError("factorize: n must be >= 1, got " + std::to_string(n));
    Factorization f{n, {}};
    for (std::int64_t p = 2; p <= n / p; ++p) {
        if (n % p != 0)
            continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.factors.emplace_back(p, e);
    }
    if (n > 1)
        f.factors.emplace_back(n, 1);
    return f;
}

int mobius(std::int64_t n)
{
    const Factorization f = factorize(n);
    int sign = 1;
    for (const auto& [p, e] : f.factors) {
        if (e > 1)
            return 0;
        sign = -sign;
    }
    return sign;
}

namespace {

std::vector<std::int64_t> expand_divisors(const Factorization& f)
{
    std::vector<std::int64_t> out{1};
    for (const auto& [p, e] : f.factors) {
        const std::size_t base = out.size();
        std::int64_t pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i)
                out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<std::int64_t> divisors(std::int64_t n, const SieveTables& tables)
{
    return expand_divisors(factorize(n, tables));
}

std::vector<std::int64_t> divisors(std::int64_t n)
{
    return expand_divisors(factorize(n));
}

std::int64_t euler_phi(std::int64_t q)
{
    require_modulus(q, "euler_phi");
    std::int64_t phi = q;
    for (const auto& [p, e] : factorize(q).factors)
        phi = phi / p * (p - 1);
    return phi;
}

double ramanujan_sum_expsum(std::int64_t q, std::int64_t a)
{
    require_modulus(q, "ramanujan_sum_expsum");
    // Reduce a*x modulo q in integers so the angle stays in [0, 2pi).
    const std::int64_t a_mod = ((a % q) + q) % q;
    double sum = 0.0;
    for (std::int64_t x = 1; x <= q; ++x) {
        if (std::gcd(x, q) != 1)
            continue;
        const std::int64_t r = static_cast<std::int64_t>((static_cast<Int128>(a_mod) * x) % q);
        sum += std::cos(2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(q));
    }
    return sum;
}

std::int64_t ramanujan_sum_holder(std::int64_t q, std::int64_t a)
{
    require_modulus(q, "ramanujan_sum_holder");
    const std::int64_t g = std::gcd(a, q); // gcd(0, q) = q
    const std::int64_t m = q / g;
    return mobius(m) * (euler_phi(q) / euler_phi(m));
}

} // namespace ntlab
