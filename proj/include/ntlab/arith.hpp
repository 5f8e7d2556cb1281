#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace ntlab {

// Sizes above this need SieveOptions::allow_large. At the default ceiling the
// tables take roughly 6 bytes per integer (600 MB at 10^8).
inline constexpr std::int64_t kDefaultSieveCeiling = 100'000'000;
// Smallest prime factors are stored as 32-bit values.
inline constexpr std::int64_t kHardSieveCeiling = 2'000'000'000;

struct SieveOptions {
    bool allow_large = false;
};

/// Witness for n = prime^exponent.
struct PrimePower {
    std::int64_t prime = 0;
    int exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Immutable per-integer tables for 1..limit: smallest prime factor, Moebius
/// and von Mangoldt. Λ(n) is kept as an exact prime-power witness; log p is
/// evaluated on read so that every caller sees the same double.
class SieveTables {
public:
    [[nodiscard]] std::int64_t limit() const noexcept { return limit_; }

    // The unchecked accessors below assume 1 <= n <= limit().

    [[nodiscard]] std::int64_t smallest_prime_factor(std::int64_t n) const noexcept
    {
        assert(n >= 2 && n <= limit_);
        return spf_[static_cast<std::size_t>(n)];
    }

    [[nodiscard]] bool is_prime(std::int64_t n) const noexcept
    {
        return n >= 2 && spf_[static_cast<std::size_t>(n)] == static_cast<std::uint32_t>(n);
    }

    [[nodiscard]] int mu(std::int64_t n) const noexcept
    {
        assert(n >= 1 && n <= limit_);
        return mu_[static_cast<std::size_t>(n)];
    }

    [[nodiscard]] std::optional<PrimePower> prime_power(std::int64_t n) const noexcept
    {
        assert(n >= 1 && n <= limit_);
        const auto k = exponent_[static_cast<std::size_t>(n)];
        if (k == 0)
            return std::nullopt;
        return PrimePower{spf_[static_cast<std::size_t>(n)], k};
    }

    [[nodiscard]] double lambda(std::int64_t n) const noexcept
    {
        assert(n >= 1 && n <= limit_);
        const auto i = static_cast<std::size_t>(n);
        return exponent_[i] == 0 ? 0.0 : std::log(static_cast<double>(spf_[i]));
    }

    /// Primes up to limit() in increasing order.
    [[nodiscard]] const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

private:
    friend SieveTables build_sieve(std::int64_t limit, SieveOptions options);

    std::int64_t limit_ = 0;
    std::vector<std::uint32_t> spf_;
    std::vector<std::int8_t> mu_;
    std::vector<std::uint8_t> exponent_; // k when n = p^k, else 0
    std::vector<std::uint32_t> primes_;
};

struct Factorization {
    std::int64_t n = 1;
    std::vector<std::pair<std::int64_t, int>> factors; // (prime, exponent), primes increasing
};

/// Linear sieve over 1..limit. Throws SizeError for limit < 1 or above the
/// ceiling (kDefaultSieveCeiling, or kHardSieveCeiling with allow_large).
SieveTables build_sieve(std::int64_t limit, SieveOptions options = {});

// Range-checked queries; RangeError when n is outside 1..tables.limit().
int mobius(std::int64_t n, const SieveTables& tables);
double mangoldt(std::int64_t n, const SieveTables& tables);
Factorization factorize(std::int64_t n, const SieveTables& tables);
std::vector<std::int64_t> divisors(std::int64_t n, const SieveTables& tables);

/// Trial-division factorization for arguments with no sieve at hand.
Factorization factorize(std::int64_t n);
int mobius(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);

std::int64_t euler_phi(std::int64_t q);

/// c_q(a) straight from the exponential sum over reduced residues. The
/// imaginary parts cancel pairwise, so only the cosine part is accumulated.
double ramanujan_sum_expsum(std::int64_t q, std::int64_t a);

/// c_q(a) = mu(q/g) phi(q) / phi(q/g) with g = gcd(a, q).
std::int64_t ramanujan_sum_holder(std::int64_t q, std::int64_t a);

} // namespace ntlab
