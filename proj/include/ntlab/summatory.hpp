#pragma once

#include "ntlab/arith.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ntlab {

/// Dirichlet-series coefficients a(1)..a(N), stored 0-based but indexed 1-based.
class CoefficientSeries {
public:
    CoefficientSeries() = default;
    /// coeffs[0] is the coefficient of 1^{-s}. Throws UsageError on non-finite input.
    explicit CoefficientSeries(std::vector<double> coeffs);

    template <class Fn>
    static CoefficientSeries generate(std::int64_t limit, Fn&& fn)
    {
        std::vector<double> c(static_cast<std::size_t>(limit > 0 ? limit : 0));
        for (std::int64_t n = 1; n <= limit; ++n)
            c[static_cast<std::size_t>(n - 1)] = static_cast<double>(fn(n));
        return CoefficientSeries(std::move(c));
    }

    [[nodiscard]] std::int64_t limit() const noexcept { return static_cast<std::int64_t>(coeffs_.size()); }
    [[nodiscard]] double operator[](std::int64_t n) const noexcept { return coeffs_[static_cast<std::size_t>(n - 1)]; }
    [[nodiscard]] std::span<const double> values() const noexcept { return coeffs_; }

private:
    std::vector<double> coeffs_;
};

// Frequently used coefficient sequences, 1..limit.
CoefficientSeries ones_series(std::int64_t limit);
CoefficientSeries identity_element_series(std::int64_t limit); // [n == 1]
CoefficientSeries mobius_series(const SieveTables& tables, std::int64_t limit);
CoefficientSeries mangoldt_series(const SieveTables& tables, std::int64_t limit);

/// f = 1 * g, i.e. f(n) = sum over d | n of g(d).
struct MobiusPair {
    CoefficientSeries f;
    CoefficientSeries g;

    static MobiusPair from_g(CoefficientSeries g);
    /// Rechecks the divisor-sum relation by direct enumeration.
    [[nodiscard]] bool holds(double tolerance = 1e-9) const;
};

struct Checkpoint {
    std::int64_t x = 0;
    double raw = 0.0;
    double normalized = 0.0;
    std::optional<double> deviation; // normalized - predicted
};

struct ConvergenceReport {
    std::vector<Checkpoint> checkpoints;
    std::optional<double> predicted_limit;
    std::string description;
};

/// Builds a report from (x, raw, normalized) rows, filling deviation against
/// `predicted`. Throws UsageError unless x is strictly increasing.
ConvergenceReport make_report(std::string description, std::optional<double> predicted,
                              std::vector<Checkpoint> rows);

struct Progression {
    std::int64_t modulus = 1;
    std::int64_t residue = 0;
};

struct PsiCheckpointSeries {
    std::vector<std::pair<std::int64_t, double>> values; // (x, psi)
    std::optional<Progression> progression;
};

/// Powers of `base` in [start, limit], followed by `limit` itself when it is
/// not already the last entry.
std::vector<std::int64_t> geometric_grid(std::int64_t limit, std::int64_t base = 10,
                                         std::int64_t start = 1000);

double chebyshev_psi(std::int64_t x, const SieveTables& tables);
double psi_ap(std::int64_t x, std::int64_t q, std::int64_t a, const SieveTables& tables);
/// psi (or psi restricted to a progression) at every grid point in one sweep.
PsiCheckpointSeries psi_series(std::span<const std::int64_t> grid, const SieveTables& tables,
                               std::optional<Progression> progression = std::nullopt);

std::int64_t prime_pi(std::int64_t x, const SieveTables& tables);
std::int64_t prime_pi_ap(std::int64_t x, std::int64_t q, std::int64_t a, const SieveTables& tables);

/// Prime count recovered from Λ(n)/log n summed over prime powers minus the
/// k >= 2 contributions; equal to prime_pi up to rounding.
double pi_via_partial_summation(std::int64_t x, const SieveTables& tables);

std::int64_t mertens(std::int64_t x, const SieveTables& tables);

/// h(n) = sum_{d | n} f(d) g(n/d), O(N log N). ShapeError on mismatched limits.
CoefficientSeries dirichlet_convolution(const CoefficientSeries& f, const CoefficientSeries& g);

/// S(x) = sum_{n <= x} (mu * Λ)(n), evaluated as sum_{d <= x} mu(d) psi(floor(x/d))
/// with d grouped by equal quotient. Memory is O(sqrt x) beyond the sieve.
double conv_summatory(std::int64_t x, const SieveTables& tables);

/// (1/x) sum_{n <= x} f(n) at each checkpoint, accumulated in natural order.
/// Without a prediction the deviation is taken against the last checkpoint.
ConvergenceReport mean_value_estimate(const CoefficientSeries& f, std::span<const std::int64_t> checkpoints,
                                      std::optional<double> predicted = std::nullopt);

struct PowerSum {
    std::int64_t exact = 0; // sum of n = qm + a <= x over m >= 0
    double leading = 0.0;   // x^2 / 2q
};

PowerSum power_sum_ap(std::int64_t x, std::int64_t q, std::int64_t a);

using Weight = std::function<double(std::int64_t)>;

/// Summation by parts. Given R(1..x) with R(t) = sum_{n <= t} f(n)/w(n), returns
/// sum_{n <= x} f(n) = w(x) R(x) - sum_{t < x} R(t) (w(t+1) - w(t)). The weight
/// defaults to w(t) = t. Throws UsageError for an empty grid.
double abel_summation(std::span<const double> partial_sums, const Weight& weight = {});

} // namespace ntlab
