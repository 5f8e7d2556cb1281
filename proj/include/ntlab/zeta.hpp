#pragma once

#include "ntlab/arith.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace ntlab {

using Complex = std::complex<double>;

inline constexpr std::int64_t kDefaultZetaTerms = 1000;
inline constexpr int kMaxStieltjesOrder = 4;

/// Laurent data of zeta at s = 1: residue of the simple pole (always 1) and
/// the Stieltjes constants gamma_0..gamma_K, K >= 2, in limit-definition
/// normalization. Evaluators apply the (-1)^n / n! weights.
class LaurentExpansionAtOne {
public:
    /// Throws UsageError when fewer than three constants are supplied.
    explicit LaurentExpansionAtOne(std::vector<double> stieltjes);

    [[nodiscard]] const std::vector<double>& stieltjes() const noexcept { return stieltjes_; }
    [[nodiscard]] int order() const noexcept { return static_cast<int>(stieltjes_.size()) - 1; }
    [[nodiscard]] double pole_coefficient() const noexcept { return 1.0; }

    /// Copy restricted to gamma_0..gamma_k (k >= 2).
    [[nodiscard]] LaurentExpansionAtOne truncated(int k) const;

private:
    std::vector<double> stieltjes_;
};

struct SeriesEvaluation {
    Complex s;
    std::int64_t terms_used = 0;
    Complex value;
    double tail_bound = 0.0;
};

/// zeta(s) for Re s > 1 and |s - 1| >= 0.5: sum_{n < terms} n^{-s} plus the
/// Euler-Maclaurin tail through B_6. tail_bound is the size of the first
/// omitted (B_8) term with the usual |s + 7| / (Re s + 7) factor.
SeriesEvaluation zeta_em(Complex s, std::int64_t terms = kDefaultZetaTerms);

/// zeta'(s) from the termwise derivative of the same expansion.
SeriesEvaluation zeta_prime_em(Complex s, std::int64_t terms = kDefaultZetaTerms);

/// gamma_0..gamma_max(k_max,2) from
///   gamma_k = lim_N [ sum_{n <= N} log^k(n)/n - log^{k+1}(N)/(k+1) ],
/// evaluated at N = terms with Euler-Maclaurin endpoint corrections.
LaurentExpansionAtOne stieltjes_constants(int k_max, std::int64_t terms);

/// 1/(s-1) + sum_n (-1)^n gamma_n (s-1)^n / n!, valid for 0 < |s - 1| < 0.5.
Complex zeta_taylor_eval(Complex s, const LaurentExpansionAtOne& expansion);

/// Termwise derivative of zeta_taylor_eval.
Complex zeta_prime_taylor_eval(Complex s, const LaurentExpansionAtOne& expansion);

/// -zeta'(s)/zeta(s)^2 on Re s >= 1. Near the pole both Laurent series are
/// multiplied through by (s-1)^2, so s = 1 itself returns exactly 1.
/// Elsewhere the Euler-Maclaurin expansion with `terms` terms is used.
Complex neg_zeta_prime_over_zeta_sq(Complex s, const LaurentExpansionAtOne& expansion,
                                    std::int64_t terms = kDefaultZetaTerms);

/// sum_{n <= n_max} Λ(n) n^{-s} for Re s > 1, with an integral bound on the
/// omitted tail.
SeriesEvaluation lambda_series_partial(Complex s, std::int64_t n_max, const SieveTables& tables);

} // namespace ntlab
