#include "ntlab/summatory.hpp"

#include "ntlab/compensated.hpp"
#include "ntlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ntlab {

namespace {

__extension__ using Int128 = __int128;

void require_x(std::int64_t x, const SieveTables& tables, const char* what)
{
    if (x < 1 || x > tables.limit())
        throw RangeError(std::string(what) + ": x = " + std::to_string(x) + " outside 1.." +
                         std::to_string(tables.limit()));
}

void require_progression(std::int64_t q, std::int64_t a, const char* what)
{
    if (q < 1)
        throw RangeError(std::string(what) + ": modulus must be >= 1, got " + std::to_string(q));
    if (a < 0 || a >= q)
        throw NormalizationError(std::string(what) + ": residue " + std::to_string(a) +
                                 " not reduced modulo " + std::to_string(q));
}

// First n >= 1 with n = a (mod q).
std::int64_t first_in_progression(std::int64_t q, std::int64_t a)
{
    return a == 0 ? q : a;
}

} // namespace

CoefficientSeries::CoefficientSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs))
{
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (!std::isfinite(coeffs_[i]))
            throw UsageError("coefficient " + std::to_string(i + 1) + " is not finite");
}

CoefficientSeries ones_series(std::int64_t limit)
{
    return CoefficientSeries(std::vector<double>(static_cast<std::size_t>(std::max<std::int64_t>(limit, 0)), 1.0));
}

CoefficientSeries identity_element_series(std::int64_t limit)
{
    return CoefficientSeries::generate(limit, [](std::int64_t n) { return n == 1 ? 1.0 : 0.0; });
}

CoefficientSeries mobius_series(const SieveTables& tables, std::int64_t limit)
{
    require_x(limit, tables, "mobius_series");
    return CoefficientSeries::generate(limit, [&](std::int64_t n) { return tables.mu(n); });
}

CoefficientSeries mangoldt_series(const SieveTables& tables, std::int64_t limit)
{
    require_x(limit, tables, "mangoldt_series");
    return CoefficientSeries::generate(limit, [&](std::int64_t n) { return tables.lambda(n); });
}

MobiusPair MobiusPair::from_g(CoefficientSeries g)
{
    CoefficientSeries f = dirichlet_convolution(ones_series(g.limit()), g);
    return MobiusPair{std::move(f), std::move(g)};
}

bool MobiusPair::holds(double tolerance) const
{
    const std::int64_t n_max = std::min(f.limit(), g.limit());
    for (std::int64_t n = 1; n <= n_max; ++n) {
        CompensatedSum s;
        for (std::int64_t d = 1; d * d <= n; ++d) {
            if (n % d != 0)
                continue;
            s += g[d];
            if (d != n / d)
                s += g[n / d];
        }
        if (std::abs(f[n] - s.value()) > tolerance)
            return false;
    }
    return true;
}

ConvergenceReport make_report(std::string description, std::optional<double> predicted,
                              std::vector<Checkpoint> rows)
{
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].x <= rows[i - 1].x)
            throw UsageError("checkpoints must be strictly increasing");
    for (auto& row : rows)
        row.deviation = predicted ? std::optional<double>(row.normalized - *predicted) : std::nullopt;
    return ConvergenceReport{std::move(rows), predicted, std::move(description)};
}

std::vector<std::int64_t> geometric_grid(std::int64_t limit, std::int64_t base, std::int64_t start)
{
    if (base < 2)
        throw UsageError("geometric grid base must be >= 2, got " + std::to_string(base));
    if (limit < 1)
        throw UsageError("grid limit must be >= 1");
    std::vector<std::int64_t> grid;
    for (std::int64_t p = 1; p <= limit; ) {
        if (p >= start)
            grid.push_back(p);
        if (p > limit / base)
            break;
        p *= base;
    }
    if (grid.empty() || grid.back() != limit)
        grid.push_back(limit);
    return grid;
}

double chebyshev_psi(std::int64_t x, const SieveTables& tables)
{
    require_x(x, tables, "chebyshev_psi");
    CompensatedSum s;
    for (std::int64_t n = 2; n <= x; ++n)
        if (tables.prime_power(n))
            s += tables.lambda(n);
    return s.value();
}

double psi_ap(std::int64_t x, std::int64_t q, std::int64_t a, const SieveTables& tables)
{
    require_x(x, tables, "psi_ap");
    require_progression(q, a, "psi_ap");
    CompensatedSum s;
    for (std::int64_t n = first_in_progression(q, a); n <= x; n += q)
        s += tables.lambda(n);
    return s.value();
}

PsiCheckpointSeries psi_series(std::span<const std::int64_t> grid, const SieveTables& tables,
                               std::optional<Progression> progression)
{
    PsiCheckpointSeries out;
    out.progression = progression;
    if (grid.empty())
        return out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        require_x(grid[i], tables, "psi_series");
        if (i > 0 && grid[i] <= grid[i - 1])
            throw UsageError("psi_series: grid must be strictly increasing");
    }
    const std::int64_t q = progression ? progression->modulus : 1;
    const std::int64_t a = progression ? progression->residue : 0;
    require_progression(q, a, "psi_series");

    CompensatedSum s;
    std::int64_t n = first_in_progression(q, a);
    for (std::int64_t x : grid) {
        for (; n <= x; n += q)
            s += tables.lambda(n);
        out.values.emplace_back(x, s.value());
    }
    return out;
}

std::int64_t prime_pi(std::int64_t x, const SieveTables& tables)
{
    require_x(x, tables, "prime_pi");
    const auto& primes = tables.primes();
    return std::upper_bound(primes.begin(), primes.end(), static_cast<std::uint64_t>(x),
                            [](std::uint64_t v, std::uint32_t p) { return v < p; }) -
           primes.begin();
}

std::int64_t prime_pi_ap(std::int64_t x, std::int64_t q, std::int64_t a, const SieveTables& tables)
{
    require_x(x, tables, "prime_pi_ap");
    require_progression(q, a, "prime_pi_ap");
    std::int64_t count = 0;
    for (std::int64_t n = first_in_progression(q, a); n <= x; n += q)
        count += tables.is_prime(n) ? 1 : 0;
    return count;
}

double pi_via_partial_summation(std::int64_t x, const SieveTables& tables)
{
    if (x < 2)
        throw RangeError("pi_via_partial_summation: x must be >= 2, got " + std::to_string(x));
    require_x(x, tables, "pi_via_partial_summation");
    CompensatedSum all_powers;
    CompensatedSum higher_powers;
    for (std::int64_t n = 2; n <= x; ++n) {
        const auto pp = tables.prime_power(n);
        if (!pp)
            continue;
        const double term = tables.lambda(n) / std::log(static_cast<double>(n));
        all_powers += term;
        if (pp->exponent >= 2)
            higher_powers += term;
    }
    return all_powers.value() - higher_powers.value();
}

std::int64_t mertens(std::int64_t x, const SieveTables& tables)
{
    require_x(x, tables, "mertens");
    std::int64_t m = 0;
    for (std::int64_t n = 1; n <= x; ++n)
        m += tables.mu(n);
    return m;
}

CoefficientSeries dirichlet_convolution(const CoefficientSeries& f, const CoefficientSeries& g)
{
    if (f.limit() != g.limit())
        throw ShapeError("dirichlet_convolution: limits differ (" + std::to_string(f.limit()) + " vs " +
                         std::to_string(g.limit()) + ")");
    const std::int64_t n_max = f.limit();
    std::vector<CompensatedSum> acc(static_cast<std::size_t>(n_max));
    for (std::int64_t d = 1; d <= n_max; ++d) {
        const double fd = f[d];
        if (fd == 0.0)
            continue;
        for (std::int64_t e = 1; d * e <= n_max; ++e)
            acc[static_cast<std::size_t>(d * e - 1)] += fd * g[e];
    }
    std::vector<double> h(acc.size());
    std::transform(acc.begin(), acc.end(), h.begin(), [](const CompensatedSum& s) { return s.value(); });
    return CoefficientSeries(std::move(h));
}

double conv_summatory(std::int64_t x, const SieveTables& tables)
{
    require_x(x, tables, "conv_summatory");

    // Blocks [lo, hi] of d sharing the quotient v = floor(x/d).
    struct Block {
        std::int64_t lo, hi, v;
    };
    std::vector<Block> blocks;
    for (std::int64_t lo = 1; lo <= x;) {
        const std::int64_t v = x / lo;
        const std::int64_t hi = x / v;
        blocks.push_back({lo, hi, v});
        lo = hi + 1;
    }

    // One sweep over n records M at every block edge and psi at every quotient.
    std::vector<std::int64_t> m_points;
    std::vector<std::int64_t> psi_points;
    m_points.reserve(2 * blocks.size());
    psi_points.reserve(blocks.size());
    for (const auto& b : blocks) {
        m_points.push_back(b.lo - 1);
        m_points.push_back(b.hi);
        psi_points.push_back(b.v);
    }
    std::sort(m_points.begin(), m_points.end());
    m_points.erase(std::unique(m_points.begin(), m_points.end()), m_points.end());
    std::sort(psi_points.begin(), psi_points.end());

    std::vector<std::int64_t> m_values(m_points.size());
    std::vector<double> psi_values(psi_points.size());
    std::size_t mi = 0;
    std::size_t pi = 0;
    std::int64_t running_m = 0;
    CompensatedSum running_psi;
    while (mi < m_points.size() && m_points[mi] == 0)
        m_values[mi++] = 0;
    for (std::int64_t n = 1; n <= x; ++n) {
        running_m += tables.mu(n);
        if (tables.prime_power(n))
            running_psi += tables.lambda(n);
        while (mi < m_points.size() && m_points[mi] == n)
            m_values[mi++] = running_m;
        while (pi < psi_points.size() && psi_points[pi] == n)
            psi_values[pi++] = running_psi.value();
    }

    auto m_at = [&](std::int64_t t) {
        const auto it = std::lower_bound(m_points.begin(), m_points.end(), t);
        return m_values[static_cast<std::size_t>(it - m_points.begin())];
    };
    auto psi_at = [&](std::int64_t t) {
        const auto it = std::lower_bound(psi_points.begin(), psi_points.end(), t);
        return psi_values[static_cast<std::size_t>(it - psi_points.begin())];
    };

    CompensatedSum s;
    for (const auto& b : blocks) {
        const std::int64_t mu_block = m_at(b.hi) - m_at(b.lo - 1);
        if (mu_block != 0)
            s += static_cast<double>(mu_block) * psi_at(b.v);
    }
    return s.value();
}

ConvergenceReport mean_value_estimate(const CoefficientSeries& f, std::span<const std::int64_t> checkpoints,
                                      std::optional<double> predicted)
{
    if (checkpoints.empty())
        throw UsageError("mean_value_estimate: empty checkpoint list");
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] < 1 || checkpoints[i] > f.limit())
            throw UsageError("mean_value_estimate: checkpoint " + std::to_string(checkpoints[i]) +
                             " outside 1.." + std::to_string(f.limit()));
        if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
            throw UsageError("mean_value_estimate: checkpoints must be strictly increasing");
    }

    std::vector<Checkpoint> rows;
    rows.reserve(checkpoints.size());
    CompensatedSum s;
    std::int64_t n = 1;
    for (std::int64_t x : checkpoints) {
        for (; n <= x; ++n)
            s += f[n];
        const double raw = s.value();
        rows.push_back({x, raw, raw / static_cast<double>(x), std::nullopt});
    }

    if (predicted)
        return make_report("mean value of f", predicted, std::move(rows));

    const double reference = rows.back().normalized;
    for (auto& row : rows)
        row.deviation = row.normalized - reference;
    return ConvergenceReport{std::move(rows), std::nullopt, "mean value of f (relative to final checkpoint)"};
}

PowerSum power_sum_ap(std::int64_t x, std::int64_t q, std::int64_t a)
{
    if (q < 1)
        throw RangeError("power_sum_ap: modulus must be >= 1, got " + std::to_string(q));
    if (a < 0 || x < 1)
        throw RangeError("power_sum_ap: need a >= 0 and x >= 1");

    PowerSum out;
    const double xd = static_cast<double>(x);
    out.leading = xd * xd / (2.0 * static_cast<double>(q));
    if (a > x)
        return out;

    // n = q m + a for m = 0..top, so the sum is q top(top+1)/2 + a (top+1).
    const Int128 top = (x - a) / q;
    const Int128 exact = static_cast<Int128>(q) * top * (top + 1) / 2 + static_cast<Int128>(a) * (top + 1);
    if (exact > std::numeric_limits<std::int64_t>::max())
        throw RangeError("power_sum_ap: result overflows 64 bits");
    out.exact = static_cast<std::int64_t>(exact);
    return out;
}

double abel_summation(std::span<const double> partial_sums, const Weight& weight)
{
    if (partial_sums.empty())
        throw UsageError("abel_summation: grid must contain at least R(1)");
    auto w = [&](std::int64_t t) { return weight ? weight(t) : static_cast<double>(t); };

    const auto x = static_cast<std::int64_t>(partial_sums.size());
    CompensatedSum s(w(x) * partial_sums.back());
    for (std::int64_t t = 1; t < x; ++t)
        s += -partial_sums[static_cast<std::size_t>(t - 1)] * (w(t + 1) - w(t));
    return s.value();
}

} // namespace ntlab
