#pragma once

#include "ntlab/arith.hpp"
#include "ntlab/summatory.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ntlab {

// Pass thresholds. Fixed once from oracle runs at 10^6 (10^5 for the Wintner
// and power-sum instances) and not tuned afterwards.
namespace thresholds {
inline constexpr double kPntRatio = 0.12;
inline constexpr double kPsiMean = 0.01;
inline constexpr double kLemma5 = 0.05;
inline constexpr double kLemma6 = 1e-3;
inline constexpr double kWintner = 1e-3;
inline constexpr double kAxer = 1e-3;
inline constexpr double kInnerSeries = 0.1;
inline constexpr double kProgression = 0.05;
inline constexpr double kThm10Gap = 0.1;
inline constexpr double kLemma11 = 0.05;
} // namespace thresholds

/// Number of trailing checkpoint steps over which |deviation| must shrink.
inline constexpr int kTrendSteps = 2;

struct HarnessOptions {
    std::vector<std::int64_t> checkpoints; // empty: geometric_grid(limit)
    std::optional<double> tolerance;       // replaces the experiment's main threshold
};

struct TheoremVerdict {
    std::string experiment_name;
    std::vector<std::pair<std::string, std::string>> parameters;
    ConvergenceReport report;
    std::vector<ConvergenceReport> supplementary;
    std::optional<bool> passed; // empty for advisory runs
    std::string criteria;

    [[nodiscard]] bool advisory() const noexcept { return !passed.has_value(); }
};

/// The g side of a Moebius pair f = 1 * g.
struct GSpec {
    std::string name;
    std::function<double(std::int64_t)> generator;
    bool absolutely_summable = false; // sum |g(n)|/n < infinity
    std::int64_t domain_limit = std::numeric_limits<std::int64_t>::max();

    static GSpec reciprocal();   // g(d) = 1/d, f(n) = sigma(n)/n
    static GSpec unit();         // g = [d == 1], f = 1
    static GSpec mobius(const SieveTables& tables);
    static GSpec neg_mu_log(const SieveTables& tables);
    static GSpec custom(std::string name, std::vector<double> table, bool absolutely_summable);
};

/// True when |values| strictly decreases over the last `steps` steps (or all
/// steps when fewer are available).
bool shrinking_tail(const std::vector<double>& values, int steps = kTrendSteps);

TheoremVerdict verify_pnt(std::int64_t limit, const SieveTables& tables, const HarnessOptions& options = {});
TheoremVerdict verify_psi_mean(std::int64_t limit, const SieveTables& tables, const HarnessOptions& options = {});
TheoremVerdict verify_lemma5(std::int64_t limit, const SieveTables& tables, const HarnessOptions& options = {});
TheoremVerdict verify_lemma6(std::int64_t limit, const SieveTables& tables, const HarnessOptions& options = {});
TheoremVerdict verify_wintner(const GSpec& g, double predicted_c, std::int64_t limit,
                              const HarnessOptions& options = {});
TheoremVerdict verify_axer(std::int64_t limit, const SieveTables& tables, const HarnessOptions& options = {});
TheoremVerdict verify_thm9(std::int64_t limit, const SieveTables& tables, const HarnessOptions& options = {});
TheoremVerdict verify_dirichlet_ap(std::int64_t q, std::int64_t a, std::int64_t limit, const SieveTables& tables,
                                   const HarnessOptions& options = {});
/// Composite (or unit) q runs in advisory mode: the gap is reported, `passed` stays empty.
TheoremVerdict verify_thm10_formula(std::int64_t q, std::int64_t a, std::int64_t limit, std::int64_t series_terms,
                                    const SieveTables& tables, const HarnessOptions& options = {});
TheoremVerdict verify_lemma11(std::int64_t q, std::int64_t a, std::int64_t limit, const HarnessOptions& options = {});

/// Right-hand side of the progression mean-value formula with g = -mu log,
/// inner series truncated at `series_terms`.
double thm10_formula_value(std::int64_t q, std::int64_t a, std::int64_t series_terms, const SieveTables& tables);

} // namespace ntlab
