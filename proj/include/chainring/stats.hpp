// stats.hpp — the few statistics the Monte Carlo harness needs: Wilson score
// intervals for binomial proportions, and chi-square quantiles computed from
// the regularized incomplete gamma function (series + Lentz continued
// fraction), bisected to the requested probability.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace chainring {

inline constexpr double kZ99OneSided = 2.3263478740408408;  // Phi^{-1}(0.99)

struct WilsonInterval {
    double lower;
    double upper;
};

inline WilsonInterval wilson_interval(uint64_t successes, uint64_t trials, double z) {
    if (trials == 0) throw std::invalid_argument("wilson_interval: no trials");
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = p + z2 / (2.0 * n);
    double margin = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, (center - margin) / denom), std::min(1.0, (center + margin) / denom)};
}

inline double wilson_upper(uint64_t successes, uint64_t trials, double z = kZ99OneSided) {
    return wilson_interval(successes, trials, z).upper;
}

inline double wilson_lower(uint64_t successes, uint64_t trials, double z = kZ99OneSided) {
    return wilson_interval(successes, trials, z).lower;
}

namespace detail {

// Regularized lower incomplete gamma P(a, x), Numerical-Recipes style.
inline double gamma_p(double a, double x) {
    if (x < 0 || a <= 0) throw std::invalid_argument("gamma_p: bad arguments");
    if (x == 0) return 0.0;
    const double gln = std::lgamma(a);
    if (x < a + 1.0) {
        // series representation
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
        }
        return sum * std::exp(-x + a * std::log(x) - gln);
    }
    // continued fraction for Q(a, x), modified Lentz
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    double q = std::exp(-x + a * std::log(x) - gln) * h;
    return 1.0 - q;
}

}  // namespace detail

inline double chi2_cdf(double x, double df) { return detail::gamma_p(df / 2.0, x / 2.0); }

// Quantile of the chi-square distribution by bisection.
inline double chi2_quantile(double p, double df) {
    if (p <= 0 || p >= 1) throw std::invalid_argument("chi2_quantile: p must be in (0,1)");
    double lo = 0.0, hi = df + 10.0;
    while (chi2_cdf(hi, df) < p) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (chi2_cdf(mid, df) < p) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Pearson chi-square statistic of observed counts against expected counts.
inline double chi2_statistic(const std::vector<uint64_t>& observed,
                             const std::vector<double>& expected) {
    if (observed.size() != expected.size() || observed.empty())
        throw std::invalid_argument("chi2_statistic: size mismatch");
    double stat = 0.0;
    for (size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] <= 0) throw std::invalid_argument("chi2_statistic: non-positive expectation");
        double d = static_cast<double>(observed[i]) - expected[i];
        stat += d * d / expected[i];
    }
    return stat;
}

}  // namespace chainring
