#include "ntlab/zeta.hpp"

#include "ntlab/compensated.hpp"
#include "ntlab/errors.hpp"

#include <array>
#include <cmath>
#include <string>

namespace ntlab {

namespace {

// B_{2k} / (2k)! for k = 1..4.
constexpr std::array<double, 4> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
};
constexpr int kCorrectionTerms = 3;

constexpr double kPoleRadius = 0.5;

class ComplexSum {
public:
    void add(Complex z)
    {
        re_.add(z.real());
        im_.add(z.imag());
    }
    [[nodiscard]] Complex value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

void require_finite(Complex s)
{
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
        throw DomainError("complex argument must be finite");
}

void require_em_region(Complex s, std::int64_t terms, const char* what)
{
    require_finite(s);
    if (terms < 1)
        throw UsageError(std::string(what) + ": terms must be >= 1");
    if (s.real() <= 1.0)
        throw DomainError(std::string(what) + ": requires Re(s) > 1");
    if (std::abs(s - 1.0) < kPoleRadius)
        throw DomainError(std::string(what) + ": |s - 1| < 0.5, use zeta_taylor_eval near the pole");
}

void require_taylor_region(Complex s, const char* what)
{
    require_finite(s);
    if (s == Complex(1.0, 0.0))
        throw PoleError(std::string(what) + ": pole at s = 1");
    if (std::abs(s - 1.0) >= kPoleRadius)
        throw DomainError(std::string(what) + ": |s - 1| >= 0.5, use zeta_em");
}

// Rising factorial s (s+1) ... (s+m-1).
Complex rising(Complex s, int m)
{
    Complex p = 1.0;
    for (int j = 0; j < m; ++j)
        p *= s + static_cast<double>(j);
    return p;
}

Complex n_pow_neg_s(double log_n, Complex s)
{
    return std::exp(-s * log_n);
}

// Euler-Maclaurin pieces shared by zeta and zeta'. No region checks: the
// formula holds for any s != 1 with Re s > -5, callers restrict further.
struct EmParts {
    Complex zeta;
    Complex zeta_prime;
    double zeta_tail;
    double zeta_prime_tail;
};

EmParts euler_maclaurin(Complex s, std::int64_t terms, bool want_derivative)
{
    ComplexSum head;
    ComplexSum head_prime;
    for (std::int64_t n = 1; n < terms; ++n) {
        const double log_n = std::log(static_cast<double>(n));
        const Complex t = n_pow_neg_s(log_n, s);
        head.add(t);
        if (want_derivative)
            head_prime.add(-log_n * t);
    }

    const double big_n = static_cast<double>(terms);
    const double log_big_n = std::log(big_n);
    const Complex n_s = n_pow_neg_s(log_big_n, s); // N^{-s}
    const Complex sm1 = s - 1.0;

    Complex z = head.value() + n_s * big_n / sm1 + 0.5 * n_s;
    Complex zp = head_prime.value() + n_s * big_n * (-log_big_n / sm1 - 1.0 / (sm1 * sm1)) - 0.5 * log_big_n * n_s;

    Complex n_pow = n_s / big_n; // N^{-s-1}
    for (int k = 1; k <= kCorrectionTerms; ++k) {
        const int m = 2 * k - 1;
        const Complex poly = rising(s, m);
        Complex dlog_poly = 0.0;
        for (int j = 0; j < m; ++j)
            dlog_poly += 1.0 / (s + static_cast<double>(j));
        const Complex term = kBernoulliOverFactorial[k - 1] * poly * n_pow;
        z += term;
        zp += term * (dlog_poly - log_big_n);
        n_pow /= big_n * big_n;
    }

    // First omitted correction, B_8 with (s)_7 N^{-s-7}.
    const double omitted = std::abs(kBernoulliOverFactorial[3] * rising(s, 7) * n_pow) *
                           std::abs(s + 7.0) / (s.real() + 7.0);
    Complex dlog7 = 0.0;
    for (int j = 0; j < 7; ++j)
        dlog7 += 1.0 / (s + static_cast<double>(j));
    return {z, zp, omitted, omitted * (std::abs(dlog7) + log_big_n)};
}

// Coefficients of log^j for the m-th t-derivative of log^k(t)/t, scaled by t^{1+m}.
std::vector<double> stieltjes_derivative_poly(int k, int m)
{
    std::vector<double> p(static_cast<std::size_t>(k) + 1, 0.0);
    p[static_cast<std::size_t>(k)] = 1.0;
    for (int step = 0; step < m; ++step) {
        std::vector<double> next(p.size(), 0.0);
        for (std::size_t j = 0; j < p.size(); ++j) {
            next[j] -= static_cast<double>(step + 1) * p[j];
            if (j > 0)
                next[j - 1] += static_cast<double>(j) * p[j];
        }
        p = std::move(next);
    }
    return p;
}

double eval_poly(const std::vector<double>& p, double x)
{
    double r = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        r = r * x + *it;
    return r;
}

} // namespace

LaurentExpansionAtOne::LaurentExpansionAtOne(std::vector<double> stieltjes) : stieltjes_(std::move(stieltjes))
{
    if (stieltjes_.size() < 3)
        throw UsageError("Laurent expansion needs at least gamma_0..gamma_2");
    for (double g : stieltjes_)
        if (!std::isfinite(g))
            throw UsageError("Stieltjes constants must be finite");
}

LaurentExpansionAtOne LaurentExpansionAtOne::truncated(int k) const
{
    if (k < 2 || k > order())
        throw UsageError("truncation order must lie in 2.." + std::to_string(order()));
    return LaurentExpansionAtOne({stieltjes_.begin(), stieltjes_.begin() + k + 1});
}

SeriesEvaluation zeta_em(Complex s, std::int64_t terms)
{
    require_em_region(s, terms, "zeta_em");
    const EmParts parts = euler_maclaurin(s, terms, false);
    return {s, terms, parts.zeta, parts.zeta_tail};
}

SeriesEvaluation zeta_prime_em(Complex s, std::int64_t terms)
{
    require_em_region(s, terms, "zeta_prime_em");
    const EmParts parts = euler_maclaurin(s, terms, true);
    return {s, terms, parts.zeta_prime, parts.zeta_prime_tail};
}

LaurentExpansionAtOne stieltjes_constants(int k_max, std::int64_t terms)
{
    if (k_max < 0)
        throw UsageError("stieltjes_constants: k_max must be >= 0");
    if (k_max > kMaxStieltjesOrder)
        throw UnsupportedOrderError("stieltjes_constants: orders above " + std::to_string(kMaxStieltjesOrder) +
                                    " are not supported");
    if (terms < 10'000)
        throw UsageError("stieltjes_constants: terms must be >= 10^4");

    const int k_top = std::max(k_max, 2);
    std::vector<CompensatedSum> sums(static_cast<std::size_t>(k_top) + 1);
    for (std::int64_t n = 2; n <= terms; ++n) {
        const double log_n = std::log(static_cast<double>(n));
        const double inv_n = 1.0 / static_cast<double>(n);
        double power = inv_n; // log^k(n) / n
        for (int k = 0; k <= k_top; ++k) {
            sums[static_cast<std::size_t>(k)].add(power);
            power *= log_n;
        }
    }
    sums[0].add(1.0); // n = 1 contributes only to k = 0

    const double big_n = static_cast<double>(terms);
    const double log_big_n = std::log(big_n);
    std::vector<double> gammas;
    for (int k = 0; k <= k_top; ++k) {
        CompensatedSum g(sums[static_cast<std::size_t>(k)].value());
        g.add(-std::pow(log_big_n, k + 1) / static_cast<double>(k + 1));
        g.add(-0.5 * std::pow(log_big_n, k) / big_n);
        for (int j = 1; j <= kCorrectionTerms; ++j) {
            const int m = 2 * j - 1;
            const double deriv = eval_poly(stieltjes_derivative_poly(k, m), log_big_n) / std::pow(big_n, m + 1);
            g.add(-kBernoulliOverFactorial[static_cast<std::size_t>(j - 1)] * deriv);
        }
        gammas.push_back(g.value());
    }
    return LaurentExpansionAtOne(std::move(gammas));
}

Complex zeta_taylor_eval(Complex s, const LaurentExpansionAtOne& expansion)
{
    require_taylor_region(s, "zeta_taylor_eval");
    const Complex h = s - 1.0;
    Complex series = 0.0;
    Complex h_pow = 1.0;
    double factorial = 1.0;
    double sign = 1.0;
    for (std::size_t n = 0; n < expansion.stieltjes().size(); ++n) {
        if (n > 0)
            factorial *= static_cast<double>(n);
        series += sign * expansion.stieltjes()[n] / factorial * h_pow;
        h_pow *= h;
        sign = -sign;
    }
    return 1.0 / h + series;
}

Complex zeta_prime_taylor_eval(Complex s, const LaurentExpansionAtOne& expansion)
{
    require_taylor_region(s, "zeta_prime_taylor_eval");
    const Complex h = s - 1.0;
    Complex series = 0.0;
    Complex h_pow = 1.0; // h^{n-1}
    double factorial = 1.0; // (n-1)!
    for (std::size_t n = 1; n < expansion.stieltjes().size(); ++n) {
        if (n > 1)
            factorial *= static_cast<double>(n - 1);
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        series += sign * expansion.stieltjes()[n] / factorial * h_pow;
        h_pow *= h;
    }
    return -1.0 / (h * h) + series;
}

Complex neg_zeta_prime_over_zeta_sq(Complex s, const LaurentExpansionAtOne& expansion, std::int64_t terms)
{
    require_finite(s);
    if (s.real() < 1.0)
        throw DomainError("neg_zeta_prime_over_zeta_sq: requires Re(s) >= 1");
    if (s == Complex(1.0, 0.0))
        return 1.0;

    const Complex h = s - 1.0;
    if (std::abs(h) < kPoleRadius) {
        // (s-1) zeta(s) = 1 + sum_n (-1)^n gamma_n h^{n+1} / n!
        // -(s-1)^2 zeta'(s) = 1 - sum_{n>=1} (-1)^n gamma_n h^{n+1} / (n-1)!
        const auto& g = expansion.stieltjes();
        Complex scaled_zeta = 1.0;
        Complex scaled_neg_prime = 1.0;
        Complex h_pow = h;
        double factorial = 1.0;
        for (std::size_t n = 0; n < g.size(); ++n) {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            if (n > 0) {
                scaled_neg_prime -= sign * g[n] / factorial * h_pow; // factorial == (n-1)! here
                factorial *= static_cast<double>(n);
            }
            scaled_zeta += sign * g[n] / factorial * h_pow;
            h_pow *= h;
        }
        return scaled_neg_prime / (scaled_zeta * scaled_zeta);
    }

    if (terms < 1)
        throw UsageError("neg_zeta_prime_over_zeta_sq: terms must be >= 1");
    const EmParts parts = euler_maclaurin(s, terms, true);
    return -parts.zeta_prime / (parts.zeta * parts.zeta);
}

SeriesEvaluation lambda_series_partial(Complex s, std::int64_t n_max, const SieveTables& tables)
{
    require_finite(s);
    const double sigma = s.real();
    if (sigma <= 1.0)
        throw DomainError("lambda_series_partial: requires Re(s) > 1");
    if (n_max < 1 || n_max > tables.limit())
        throw RangeError("lambda_series_partial: N = " + std::to_string(n_max) + " outside 1.." +
                         std::to_string(tables.limit()));

    ComplexSum sum;
    for (std::int64_t n = 2; n <= n_max; ++n) {
        const auto pp = tables.prime_power(n);
        if (!pp)
            continue;
        sum.add(tables.lambda(n) * n_pow_neg_s(std::log(static_cast<double>(n)), s));
    }

    // Λ(n) <= log n, and log(t) t^{-sigma} decreases for t >= 3.
    double tail = 0.0;
    std::int64_t from = n_max;
    for (; from < 3; ++from) {
        const double t = static_cast<double>(from + 1);
        tail += std::log(t) * std::pow(t, -sigma);
    }
    const double b = static_cast<double>(from);
    const double sm1 = sigma - 1.0;
    tail += std::pow(b, -sm1) * (std::log(b) / sm1 + 1.0 / (sm1 * sm1));

    return {s, n_max, sum.value(), tail};
}

} // namespace ntlab
