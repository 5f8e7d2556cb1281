#include "ntlab/harness.hpp"

#include "ntlab/compensated.hpp"
#include "ntlab/errors.hpp"
#include "ntlab/format.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ntlab {

namespace {

std::vector<std::int64_t> resolve_grid(std::int64_t limit, const HarnessOptions& options)
{
    std::vector<std::int64_t> grid = options.checkpoints.empty() ? geometric_grid(limit) : options.checkpoints;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 1 || grid[i] > limit)
            throw UsageError("checkpoint " + std::to_string(grid[i]) + " outside 1.." + std::to_string(limit));
        if (i > 0 && grid[i] <= grid[i - 1])
            throw UsageError("checkpoints must be strictly increasing");
    }
    return grid;
}

void require_tables(std::int64_t limit, const SieveTables& tables, const char* what)
{
    if (limit > tables.limit())
        throw UsageError(std::string(what) + ": limit " + std::to_string(limit) + " exceeds sieve limit " +
                         std::to_string(tables.limit()));
}

double tolerance_or(const HarnessOptions& options, double fallback)
{
    return options.tolerance.value_or(fallback);
}

std::vector<double> abs_deviations(const ConvergenceReport& r)
{
    std::vector<double> out;
    for (const auto& c : r.checkpoints)
        out.push_back(std::abs(c.deviation.value_or(c.normalized)));
    return out;
}

double final_abs_deviation(const ConvergenceReport& r)
{
    return abs_deviations(r).back();
}

const Checkpoint* find_checkpoint(const ConvergenceReport& r, std::int64_t x)
{
    for (const auto& c : r.checkpoints)
        if (c.x == x)
            return &c;
    return nullptr;
}

std::string fmt(double v)
{
    return format_real(v);
}

bool is_prime_trial(std::int64_t n)
{
    if (n < 2)
        return false;
    for (std::int64_t d = 2; d <= n / d; ++d)
        if (n % d == 0)
            return false;
    return true;
}

// psi(x)/x rows against 1, shared by the psi-mean and thm9 experiments.
ConvergenceReport psi_mean_report(const std::vector<std::int64_t>& grid, const SieveTables& tables)
{
    const PsiCheckpointSeries psi = psi_series(grid, tables);
    std::vector<Checkpoint> rows;
    for (const auto& [x, v] : psi.values)
        rows.push_back({x, v, v / static_cast<double>(x), std::nullopt});
    return make_report("psi(x)/x", 1.0, std::move(rows));
}

bool psi_mean_passes(const ConvergenceReport& r, double tol)
{
    return final_abs_deviation(r) < tol && shrinking_tail(abs_deviations(r));
}

// Partial sums of the formula's right side at each T in `grid`.
std::vector<double> thm10_formula_partials(std::int64_t q, std::int64_t a, const std::vector<std::int64_t>& grid,
                                           const SieveTables& tables)
{
    struct Term {
        std::int64_t d;
        int mu_d;
        double weight; // c_d(a) / d
        double log_d;
        CompensatedSum inner;
    };
    std::vector<Term> terms;
    for (std::int64_t d : divisors(q)) {
        const int mu_d = mobius(d);
        const std::int64_t c = ramanujan_sum_holder(d, a);
        if (mu_d == 0 || c == 0)
            continue;
        terms.push_back({d, mu_d, static_cast<double>(c) / static_cast<double>(d), std::log(static_cast<double>(d)), {}});
    }

    std::vector<double> out;
    std::int64_t n = 1;
    for (std::int64_t t_max : grid) {
        for (; n <= t_max; ++n) {
            const int mu_n = tables.mu(n);
            if (mu_n == 0)
                continue;
            const double log_n = std::log(static_cast<double>(n));
            for (auto& t : terms) {
                if (std::gcd(t.d, n) != 1)
                    continue;
                // g(dn) / n with g = -mu log and mu(dn) = mu(d) mu(n) for coprime d, n.
                t.inner.add(-static_cast<double>(t.mu_d * mu_n) * (t.log_d + log_n) / static_cast<double>(n));
            }
        }
        CompensatedSum total;
        for (const auto& t : terms)
            total.add(t.weight * t.inner.value());
        out.push_back(total.value() / static_cast<double>(q));
    }
    return out;
}

void require_reduced_coprime(std::int64_t q, std::int64_t a, const char* what)
{
    if (q < 1)
        throw RangeError(std::string(what) + ": modulus must be >= 1");
    if (a < 0 || a >= q)
        throw NormalizationError(std::string(what) + ": residue must satisfy 0 <= a < q");
    if (std::gcd(a, q) != 1)
        throw UsageError(std::string(what) + ": requires gcd(a, q) = 1");
}

} // namespace

GSpec GSpec::reciprocal()
{
    return {"1/d", [](std::int64_t d) { return 1.0 / static_cast<double>(d); }, true,
            std::numeric_limits<std::int64_t>::max()};
}

GSpec GSpec::unit()
{
    return {"[d=1]", [](std::int64_t d) { return d == 1 ? 1.0 : 0.0; }, true,
            std::numeric_limits<std::int64_t>::max()};
}

GSpec GSpec::mobius(const SieveTables& tables)
{
    return {"mu", [&tables](std::int64_t d) { return static_cast<double>(tables.mu(d)); }, false, tables.limit()};
}

GSpec GSpec::neg_mu_log(const SieveTables& tables)
{
    return {"-mu*log",
            [&tables](std::int64_t d) { return -static_cast<double>(tables.mu(d)) * std::log(static_cast<double>(d)); },
            false, tables.limit()};
}

GSpec GSpec::custom(std::string name, std::vector<double> table, bool absolutely_summable)
{
    const auto size = static_cast<std::int64_t>(table.size());
    return {std::move(name),
            [t = std::move(table)](std::int64_t d) { return t[static_cast<std::size_t>(d - 1)]; },
            absolutely_summable, size};
}

bool shrinking_tail(const std::vector<double>& values, int steps)
{
    const auto n = static_cast<int>(values.size());
    for (int i = std::max(1, n - steps); i < n; ++i)
        if (!(std::abs(values[static_cast<std::size_t>(i)]) < std::abs(values[static_cast<std::size_t>(i - 1)])))
            return false;
    return true;
}

TheoremVerdict verify_pnt(std::int64_t limit, const SieveTables& tables, const HarnessOptions& options)
{
    if (limit < 10'000)
        throw UsageError("verify_pnt: limit must be >= 10^4");
    require_tables(limit, tables, "verify_pnt");
    const auto grid = resolve_grid(limit, options);
    const double tol = tolerance_or(options, thresholds::kPntRatio);

    std::vector<Checkpoint> rows;
    for (std::int64_t x : grid) {
        const auto count = static_cast<double>(prime_pi(x, tables));
        const double xd = static_cast<double>(x);
        rows.push_back({x, count, count * std::log(xd) / xd, std::nullopt});
    }
    ConvergenceReport report = make_report("pi(x) log(x) / x", 1.0, std::move(rows));

    bool decreasing = true;
    for (std::size_t i = 1; i < report.checkpoints.size(); ++i)
        decreasing = decreasing && report.checkpoints[i].normalized < report.checkpoints[i - 1].normalized;
    const bool passed = decreasing && final_abs_deviation(report) < tol;

    return {"pnt",
            {{"limit", format_integer(limit)}, {"tolerance", fmt(tol)}},
            std::move(report),
            {},
            passed,
            "pi(x) log x / x strictly decreasing over all checkpoints and |final - 1| < " + fmt(tol)};
}

TheoremVerdict verify_psi_mean(std::int64_t limit, const SieveTables& tables, const HarnessOptions& options)
{
    require_tables(limit, tables, "verify_psi_mean");
    const auto grid = resolve_grid(limit, options);
    const double tol = tolerance_or(options, thresholds::kPsiMean);
    ConvergenceReport report = psi_mean_report(grid, tables);
    const bool passed = psi_mean_passes(report, tol);
    return {"psi-mean",
            {{"limit", format_integer(limit)}, {"tolerance", fmt(tol)}},
            std::move(report),
            {},
            passed,
            "|psi(x)/x - 1| < " + fmt(tol) + " at the final checkpoint and |deviation| shrinking over the last " +
                std::to_string(kTrendSteps) + " steps"};
}

TheoremVerdict verify_lemma5(std::int64_t limit, const SieveTables& tables, const HarnessOptions& options)
{
    require_tables(limit, tables, "verify_lemma5");
    const auto grid = resolve_grid(limit, options);
    const double tol = tolerance_or(options, thresholds::kLemma5);

    std::vector<Checkpoint> rows;
    for (std::int64_t x : grid) {
        const double s = conv_summatory(x, tables);
        rows.push_back({x, s, s / static_cast<double>(x), std::nullopt});
    }
    ConvergenceReport report = make_report("S(x)/x, S = summatory (mu * Lambda)", 0.0, std::move(rows));

    const Checkpoint* base = find_checkpoint(report, 1000);
    if (base == nullptr)
        base = &report.checkpoints.front();
    const double final_ratio = final_abs_deviation(report);
    const bool below_base = report.checkpoints.size() == 1 || final_ratio < std::abs(base->normalized);
    const bool passed = final_ratio < tol && below_base;

    return {"lemma5",
            {{"limit", format_integer(limit)}, {"tolerance", fmt(tol)}, {"baseline_x", format_integer(base->x)}},
            std::move(report),
            {},
            passed,
            "|S(x)|/x < " + fmt(tol) + " at the final checkpoint and below its value at x = " +
                format_integer(base->x)};
}

TheoremVerdict verify_lemma6(std::int64_t limit, const SieveTables& tables, const HarnessOptions& options)
{
    require_tables(limit, tables, "verify_lemma6");
    const auto grid = resolve_grid(limit, options);
    const double tol = tolerance_or(options, thresholds::kLemma6);

    std::vector<Checkpoint> rows;
    std::int64_t m = 0;
    std::int64_t n = 1;
    for (std::int64_t x : grid) {
        for (; n <= x; ++n)
            m += tables.mu(n);
        rows.push_back({x, static_cast<double>(m), static_cast<double>(m) / static_cast<double>(x), std::nullopt});
    }
    ConvergenceReport report = make_report("M(x)/x, M = Mertens function", 0.0, std::move(rows));
    const bool passed = final_abs_deviation(report) < tol && shrinking_tail(abs_deviations(report));
    return {"lemma6",
            {{"limit", format_integer(limit)}, {"tolerance", fmt(tol)}, {"f", "mu"}},
            std::move(report),
            {},
            passed,
            "|M(x)|/x < " + fmt(tol) + " at the final checkpoint and shrinking over the last " +
                std::to_string(kTrendSteps) + " steps"};
}

TheoremVerdict verify_wintner(const GSpec& g, double predicted_c, std::int64_t limit, const HarnessOptions& options)
{
    if (!g.absolutely_summable)
        throw UsageError("verify_wintner: g = " + g.name +
                         " is not absolutely summable against 1/n; use the thm9 experiment instead");
    if (limit < 1 || limit > g.domain_limit)
        throw UsageError("verify_wintner: g = " + g.name + " is not defined up to " + std::to_string(limit));
    const auto grid = resolve_grid(limit, options);
    const double tol = tolerance_or(options, thresholds::kWintner);

    const MobiusPair pair = MobiusPair::from_g(CoefficientSeries::generate(limit, g.generator));
    ConvergenceReport report = mean_value_estimate(pair.f, grid, predicted_c);
    report.description = "(1/x) sum f(n), f = 1 * g, g = " + g.name;
    const bool passed = final_abs_deviation(report) < tol;
    return {"wintner",
            {{"g", g.name}, {"predicted_c", fmt(predicted_c)}, {"limit", format_integer(limit)}, {"tolerance", fmt(tol)}},
            std::move(report),
            {},
            passed,
            "|(1/x) sum f - c| < " + fmt(tol) + " at the final checkpoint"};
}

TheoremVerdict verify_axer(std::int64_t limit, const SieveTables& tables, const HarnessOptions& options)
{
    require_tables(limit, tables, "verify_axer");
    const auto grid = resolve_grid(limit, options);
    const double tol = tolerance_or(options, thresholds::kAxer);

    const CoefficientSeries g = mobius_series(tables, limit);
    const MobiusPair pair = MobiusPair::from_g(g);
    ConvergenceReport mean = mean_value_estimate(pair.f, grid, 0.0);
    mean.description = "(1/x) sum f(n), f = 1 * mu";

    std::vector<Checkpoint> hypothesis_rows;
    std::vector<Checkpoint> c_rows;
    std::int64_t abs_sum = 0;
    CompensatedSum c;
    std::int64_t n = 1;
    for (std::int64_t x : grid) {
        for (; n <= x; ++n) {
            abs_sum += std::abs(tables.mu(n));
            c.add(static_cast<double>(tables.mu(n)) / static_cast<double>(n));
        }
        hypothesis_rows.push_back(
            {x, static_cast<double>(abs_sum), static_cast<double>(abs_sum) / static_cast<double>(x), std::nullopt});
        c_rows.push_back({x, c.value(), c.value(), std::nullopt});
    }
    ConvergenceReport hypothesis = make_report("hypothesis ratio sum |mu(n)| / x", std::nullopt, std::move(hypothesis_rows));
    ConvergenceReport c_report = make_report("c = sum mu(n)/n partial sums", 0.0, std::move(c_rows));

    bool hypothesis_holds = true;
    for (const auto& row : hypothesis.checkpoints)
        hypothesis_holds = hypothesis_holds && row.normalized <= 1.0;
    const bool passed = final_abs_deviation(mean) < tol && final_abs_deviation(c_report) < tol && hypothesis_holds;

    return {"axer",
            {{"g", "mu"}, {"limit", format_integer(limit)}, {"tolerance", fmt(tol)}},
            std::move(mean),
            {std::move(hypothesis), std::move(c_report)},
            passed,
            "|(1/x) sum f| < " + fmt(tol) + " and |sum mu(n)/n| < " + fmt(tol) +
                " at the final checkpoint; sum |mu| / x <= 1 at every checkpoint"};
}

TheoremVerdict verify_thm9(std::int64_t limit, const SieveTables& tables, const HarnessOptions& options)
{
    require_tables(limit, tables, "verify_thm9");
    const auto grid = resolve_grid(limit, options);
    const double tol = tolerance_or(options, thresholds::kInnerSeries);

    std::vector<Checkpoint> rows;
    CompensatedSum c0;
    std::int64_t n = 1;
    for (std::int64_t x : grid) {
        for (; n <= x; ++n) {
            const int mu = tables.mu(n);
            if (mu != 0)
                c0.add(-static_cast<double>(mu) * std::log(static_cast<double>(n)) / static_cast<double>(n));
        }
        rows.push_back({x, c0.value(), c0.value(), std::nullopt});
    }
    ConvergenceReport inner = make_report("c0(N) = sum_{n<=N} -mu(n) log(n) / n", 1.0, std::move(rows));
    ConvergenceReport psi = psi_mean_report(grid, tables);

    const bool inner_ok = final_abs_deviation(inner) < tol && shrinking_tail(abs_deviations(inner));
    const bool psi_ok = psi_mean_passes(psi, thresholds::kPsiMean);
    return {"thm9",
            {{"g", "-mu*log"}, {"f", "Lambda"}, {"limit", format_integer(limit)}, {"tolerance", fmt(tol)}},
            std::move(inner),
            {std::move(psi)},
            inner_ok && psi_ok,
            "|c0(N) - 1| < " + fmt(tol) + " at the final checkpoint, |deviation| shrinking over the last " +
                std::to_string(kTrendSteps) + " steps, and the psi-mean criterion (" + fmt(thresholds::kPsiMean) +
                ") holds"};
}

TheoremVerdict verify_dirichlet_ap(std::int64_t q, std::int64_t a, std::int64_t limit, const SieveTables& tables,
                                   const HarnessOptions& options)
{
    require_reduced_coprime(q, a, "verify_dirichlet_ap");
    require_tables(limit, tables, "verify_dirichlet_ap");
    const auto grid = resolve_grid(limit, options);
    const double tol = tolerance_or(options, thresholds::kProgression);
    const auto phi = static_cast<double>(euler_phi(q));

    const PsiCheckpointSeries psi = psi_series(grid, tables, Progression{q, a});
    std::vector<Checkpoint> phi_rows;
    std::vector<Checkpoint> q_rows;
    for (const auto& [x, v] : psi.values) {
        const double xd = static_cast<double>(x);
        phi_rows.push_back({x, v, v * phi / xd, std::nullopt});
        q_rows.push_back({x, v, v * static_cast<double>(q) / xd, std::nullopt});
    }
    ConvergenceReport phi_report = make_report("psi(x;q,a) phi(q) / x", 1.0, std::move(phi_rows));
    ConvergenceReport q_report = make_report("psi(x;q,a) q / x (lower bound 1)", 1.0, std::move(q_rows));

    const bool equality_ok = final_abs_deviation(phi_report) < tol;
    const bool lower_bound_ok = q_report.checkpoints.back().normalized > 1.0 - tol;
    return {"dirichlet",
            {{"modulus", format_integer(q)}, {"residue", format_integer(a)}, {"limit", format_integer(limit)},
             {"tolerance", fmt(tol)}},
            std::move(phi_report),
            {std::move(q_report)},
            equality_ok && lower_bound_ok,
            "|psi(x;q,a) phi(q)/x - 1| < " + fmt(tol) + " and psi(x;q,a) q/x > " + fmt(1.0 - tol) +
                " at the final checkpoint"};
}

double thm10_formula_value(std::int64_t q, std::int64_t a, std::int64_t series_terms, const SieveTables& tables)
{
    require_reduced_coprime(q, a, "thm10_formula_value");
    if (series_terms < 1)
        throw UsageError("thm10_formula_value: series_terms must be >= 1");
    require_tables(series_terms, tables, "thm10_formula_value");
    return thm10_formula_partials(q, a, {series_terms}, tables).back();
}

TheoremVerdict verify_thm10_formula(std::int64_t q, std::int64_t a, std::int64_t limit, std::int64_t series_terms,
                                    const SieveTables& tables, const HarnessOptions& options)
{
    require_reduced_coprime(q, a, "verify_thm10_formula");
    if (series_terms < 1)
        throw UsageError("verify_thm10_formula: series_terms must be >= 1");
    require_tables(limit, tables, "verify_thm10_formula");
    require_tables(series_terms, tables, "verify_thm10_formula");
    const auto grid = resolve_grid(limit, options);
    const double tol = tolerance_or(options, thresholds::kThm10Gap);

    const std::vector<std::int64_t> series_grid = geometric_grid(series_terms);
    const std::vector<double> partials = thm10_formula_partials(q, a, series_grid, tables);
    const double formula = partials.back();

    std::vector<Checkpoint> series_rows;
    for (std::size_t i = 0; i < series_grid.size(); ++i)
        series_rows.push_back({series_grid[i], partials[i], partials[i], std::nullopt});
    ConvergenceReport series =
        make_report("formula (1/q) sum_{d|q} c_d(a)/d sum_{n<=T} g(dn)/n, g = -mu log", std::nullopt, std::move(series_rows));

    const PsiCheckpointSeries psi = psi_series(grid, tables, Progression{q, a});
    std::vector<Checkpoint> rows;
    for (const auto& [x, v] : psi.values)
        rows.push_back({x, v, v / static_cast<double>(x), std::nullopt});
    ConvergenceReport report = make_report("(1/x) psi(x;q,a) against the formula value", formula, std::move(rows));

    const bool prime_modulus = is_prime_trial(q);
    std::optional<bool> passed;
    if (prime_modulus)
        passed = final_abs_deviation(report) < tol;

    return {"thm10",
            {{"modulus", format_integer(q)}, {"residue", format_integer(a)}, {"limit", format_integer(limit)},
             {"series_terms", format_integer(series_terms)}, {"formula", fmt(formula)}, {"tolerance", fmt(tol)},
             {"mode", prime_modulus ? "verdict" : "advisory"}},
            std::move(report),
            {std::move(series)},
            passed,
            prime_modulus ? "|(1/x) psi(x;q,a) - formula| < " + fmt(tol) + " at the final checkpoint"
                          : std::string("advisory: composite modulus, gap reported only")};
}

TheoremVerdict verify_lemma11(std::int64_t q, std::int64_t a, std::int64_t limit, const HarnessOptions& options)
{
    if (q < 1 || a < 0 || limit < 1)
        throw UsageError("verify_lemma11: need q >= 1, a >= 0, limit >= 1");
    const auto grid = resolve_grid(limit, options);
    const double tol = tolerance_or(options, thresholds::kLemma11);

    std::vector<Checkpoint> rows;
    std::vector<Checkpoint> linear_rows;
    for (std::int64_t x : grid) {
        const PowerSum ps = power_sum_ap(x, q, a);
        const double xd = static_cast<double>(x);
        const double qd = static_cast<double>(q);
        const auto exact = static_cast<double>(ps.exact);
        rows.push_back({x, exact, exact * qd / (xd * xd), std::nullopt});
        linear_rows.push_back({x, exact, (exact - ps.leading) * qd / xd, std::nullopt});
    }
    ConvergenceReport report = make_report("q/x^2 sum_{n<=x, n=a mod q} n", 0.5, std::move(rows));
    ConvergenceReport linear = make_report("(sum - x^2/2q) / (x/q)", std::nullopt, std::move(linear_rows));

    // The deviation is an exact arithmetic fluctuation (identically zero for
    // some progressions), so the decreasing trend is carried by its envelope
    // |sum - x^2/2q| <= (x + q)/2, which shrinks like q/2x after normalizing.
    bool within_envelope = true;
    for (const auto& c : report.checkpoints) {
        const double xd = static_cast<double>(c.x);
        const double qd = static_cast<double>(q);
        within_envelope = within_envelope && std::abs(*c.deviation) <= qd * (xd + qd) / (2.0 * xd * xd);
    }
    const bool passed = final_abs_deviation(report) < tol && within_envelope;
    return {"lemma11",
            {{"modulus", format_integer(q)}, {"residue", format_integer(a)}, {"limit", format_integer(limit)},
             {"tolerance", fmt(tol)}},
            std::move(report),
            {std::move(linear)},
            passed,
            "|sum - x^2/2q| / (x^2/q) < " + fmt(tol) +
                " at the final checkpoint and within the decreasing envelope q(x+q)/2x^2 at every checkpoint"};
}

} // namespace ntlab
