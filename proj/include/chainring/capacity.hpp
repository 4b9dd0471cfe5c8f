// capacity.hpp — exact and bounding capacity computations for the three
// matrix channels, in q-ary units per channel use.
//
// Every value is computed from exact big-integer counts; the conversion to a
// log-domain double happens only at the boundary, and each result carries the
// exact ratio it is the log of, flagged when that ratio is a plain q power.
// Asymptotic formulas take exact rational inputs (nbar = n/m and so on) so
// case selection never depends on float rounding.

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "counting.hpp"
#include "shape.hpp"

namespace chainring {

// log_q of an exact positive rational.
struct QLog {
    bigrat ratio;  // the exact quantity whose log_q this is
    double value;  // log_q(ratio) as a double
    bool exact;    // true iff ratio is an integer power of q (value is exact)
};

inline QLog make_qlog(bigrat ratio, int64_t q) {
    if (ratio <= 0) throw std::domain_error("make_qlog: non-positive ratio");
    bigint num = boost::multiprecision::numerator(ratio);
    bigint den = boost::multiprecision::denominator(ratio);
    auto q_power = [&](bigint x) -> std::optional<long> {
        long e = 0;
        while (x > 1 && x % q == 0) { x /= q; ++e; }
        if (x == 1) return e;
        return std::nullopt;
    };
    QLog out{std::move(ratio), 0.0, false};
    if (den == 1) {
        if (auto e = q_power(num)) {
            out.value = static_cast<double>(*e);
            out.exact = true;
            return out;
        }
    } else if (num == 1) {
        if (auto e = q_power(den)) {
            out.value = -static_cast<double>(*e);
            out.exact = true;
            return out;
        }
    }
    out.value = logq_big(out.ratio, q);
    return out;
}

inline double binom_double(int n, int k) {
    double r = 1;
    for (int i = 0; i < k; ++i) r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return r;
}

// prod_{i=0}^{count-1} (1 - q^{i-n}) as an exact rational.
inline bigrat one_minus_q_pow_product(int64_t q, int n, int count) {
    bigrat res = 1;
    bigint qn = pow_int(q, static_cast<unsigned long>(n));
    bigint qi = 1;
    for (int i = 0; i < count; ++i) {
        res *= bigrat(qn - qi, qn);
        qi *= q;
    }
    return res;
}

// --- MMC ----------------------------------------------------------------------

// C_MMC = log_q sum_{lambda <= n, mu} |submodules of shape lambda|.
inline QLog c_mmc(const CountContext& ctx, int n, const Shape& mu) {
    bigint sum = 0;
    for (const Shape& lambda : subshapes(mu, n)) sum += submodule_count(ctx, mu, lambda);
    return make_qlog(bigrat(sum), ctx.q);
}

inline Shape mmc_typical_kappa(int n, const Shape& mu) {
    std::vector<int> k(static_cast<size_t>(mu.s()));
    for (int i = 1; i <= mu.s(); ++i) k[static_cast<size_t>(i - 1)] = std::min(n, mu.at(i) / 2);
    return Shape(std::move(k));
}

struct Bounds {
    double lower;
    double upper;
};

// sum kappa_i (mu_i - kappa_i) <= C_MMC <= same + log_q(4^s binom(n+s, s)).
inline Bounds c_mmc_bounds(const CountContext& ctx, int n, const Shape& mu) {
    Shape kappa = mmc_typical_kappa(n, mu);
    double lower = 0;
    for (int i = 1; i <= ctx.s; ++i) lower += kappa.at(i) * (mu.at(i) - kappa.at(i));
    double logq = std::log2(static_cast<double>(ctx.q));
    double slack =
        (ctx.s * std::log2(4.0) + std::log2(binom_double(n + ctx.s, ctx.s))) / logq;
    return {lower, lower + slack};
}

// Asymptotic capacity sum kbar_i (mubar_i - kbar_i) / (nbar |mubar|) with
// kbar_i = min(nbar, mubar_i / 2).
inline bigrat c_mmc_asymptotic(const bigrat& nbar, const std::vector<bigrat>& mubar) {
    bigrat total = 0, num = 0;
    for (const bigrat& m : mubar) total += m;
    if (nbar <= 0 || total <= 0)
        throw std::domain_error("c_mmc_asymptotic: nbar and |mubar| must be positive");
    for (const bigrat& m : mubar) {
        bigrat kb = m / 2 < nbar ? m / 2 : nbar;
        num += kb * (m - kb);
    }
    return num / (nbar * total);
}

// --- AMC ----------------------------------------------------------------------

// C_AMC = n|mu| - log_q |T_tau(R^{n x mu})|.
inline QLog c_amc(const CountContext& ctx, int n, const Shape& mu, const Shape& tau) {
    if (!tau.subshape_of(mu) || !tau.bounded_by(n))
        throw std::invalid_argument("c_amc: tau must be a subshape of n and mu");
    bigint noise = matrix_shape_count(ctx, n, mu, tau);
    bigint ambient = pow_int(ctx.q, static_cast<unsigned long>(n) *
                                        static_cast<unsigned long>(mu.sum()));
    return make_qlog(bigrat(ambient, noise), ctx.q);
}

inline Bounds c_amc_bounds(const CountContext& ctx, int n, const Shape& mu, const Shape& tau) {
    double core = 0;
    for (int i = 1; i <= ctx.s; ++i) core += (n - tau.at(i)) * (mu.at(i) - tau.at(i));
    double logq = std::log2(static_cast<double>(ctx.q));
    double logprod = log2_big(one_minus_q_pow_product(ctx.q, n, tau.last())) / logq;
    return {core - ctx.s * std::log2(4.0) / logq - (-logprod), core - logprod};
}

inline bigrat c_amc_asymptotic(const bigrat& nbar, const std::vector<bigrat>& mubar,
                               const std::vector<bigrat>& taubar) {
    if (taubar.size() != mubar.size())
        throw std::invalid_argument("c_amc_asymptotic: shape length mismatch");
    bigrat total = 0, num = 0;
    for (const bigrat& m : mubar) total += m;
    if (nbar <= 0 || total <= 0)
        throw std::domain_error("c_amc_asymptotic: nbar and |mubar| must be positive");
    for (size_t i = 0; i < mubar.size(); ++i)
        num += (nbar - taubar[i]) * (mubar[i] - taubar[i]);
    return num / (nbar * total);
}

// --- MAMC ---------------------------------------------------------------------

// Exact evaluation of the three-term upper bound:
// log_q sum_{lambda <= N, n+tau, mu} |submodules| - log_q |T_tau(R^{N x mu})|
//   + log_q sum_{tau' <= tau} |T_tau'(R^{N x min(n+tau_s, N)})|.
inline QLog c_mamc_upper(const CountContext& ctx, int n, int N, const Shape& mu,
                         const Shape& tau) {
    std::vector<int> cap(static_cast<size_t>(ctx.s));
    for (int i = 1; i <= ctx.s; ++i)
        cap[static_cast<size_t>(i - 1)] = std::min(mu.at(i), n + tau.at(i));
    bigint s1 = 0;
    for (const Shape& lambda : subshapes(Shape(std::move(cap)), N))
        s1 += submodule_count(ctx, mu, lambda);

    bigint s2 = matrix_shape_count(ctx, N, mu, tau);
    if (s2 == 0) throw std::invalid_argument("c_mamc_upper: empty noise set");

    const int w = std::min(n + tau.last(), N);
    Shape wshape = Shape::constant(w, ctx.s);
    bigint s3 = 0;
    for (const Shape& tp : subshapes(tau, tau.last()))
        s3 += matrix_shape_count(ctx, N, wshape, tp);

    return make_qlog(bigrat(s1 * s3, s2), ctx.q);
}

// The closed-form relaxation of the same bound, with
// xi_i = min(N, n + tau_i, floor(mu_i/2)).
inline double c_mamc_upper_closed(const CountContext& ctx, int n, int N, const Shape& mu,
                                  const Shape& tau) {
    double logq = std::log2(static_cast<double>(ctx.q));
    double total = 0;
    const int w = std::min(n + tau.last(), N);
    for (int i = 1; i <= ctx.s; ++i) {
        int xi = std::min({N, n + tau.at(i), mu.at(i) / 2});
        total += static_cast<double>(mu.at(i) - xi) * xi;
        total += static_cast<double>(w - mu.at(i)) * tau.at(i);
    }
    total += 2.0 * ctx.s * std::log2(4.0) / logq;
    total += std::log2(binom_double(N + ctx.s, ctx.s)) / logq;
    total += std::log2(binom_double(tau.last() + ctx.s, ctx.s)) / logq;
    total -= log2_big(one_minus_q_pow_product(ctx.q, N, tau.last())) / logq;
    return total;
}

struct AsymptoticBound {
    bigrat value;
    bool mu_precondition_ok;  // the stated form assumes mubar >= 2 Nbar
};

// Two-case asymptotic upper bound; the case split n + t <= N is decided on
// the exact rationals.
inline AsymptoticBound c_mamc_asymptotic_upper(const bigrat& nbar, const bigrat& Nbar,
                                               const std::vector<bigrat>& mubar,
                                               const bigrat& tbar) {
    bigrat total = 0, num = 0;
    for (const bigrat& m : mubar) total += m;
    if (nbar <= 0 || total <= 0)
        throw std::domain_error("c_mamc_asymptotic_upper: nbar and |mubar| must be positive");
    bool ok = true;
    for (const bigrat& m : mubar) ok &= m >= 2 * Nbar;
    if (nbar + tbar <= Nbar) {
        for (const bigrat& m : mubar) num += nbar * (m - nbar - tbar);
    } else {
        for (const bigrat& m : mubar) num += (Nbar - tbar) * (m - Nbar);
    }
    return {num / (nbar * total), ok};
}

struct ExtensionBounds {
    bigrat lower;
    bigrat upper;
};

// Non-uniform transfer matrices: achievability keeps the scheme's rate (the
// lower bound), while a receiver that knows A gives the upper bound.
inline ExtensionBounds extension_bounds(const bigrat& nbar, const bigrat& Nbar,
                                        const std::vector<bigrat>& mubar, const bigrat& tbar) {
    bigrat total = 0;
    for (const bigrat& m : mubar) total += m;
    if (nbar <= 0 || total <= 0)
        throw std::domain_error("extension_bounds: nbar and |mubar| must be positive");
    bigrat lower = 0, upper = 0;
    if (nbar + tbar <= Nbar) {
        for (const bigrat& m : mubar) {
            lower += nbar * (m - nbar - tbar);
            upper += nbar * (m - tbar);
        }
    } else {
        for (const bigrat& m : mubar) {
            lower += (Nbar - tbar) * (m - Nbar);
            upper += (Nbar - tbar) * (m - tbar);
        }
    }
    return {lower / (nbar * total), upper / (nbar * total)};
}

struct VariableRankPenalty {
    double entropy;  // H(T) in q-ary units
    double cap;      // log_q(t + 1)
};

inline VariableRankPenalty variable_rank_penalty(const std::vector<double>& p, int64_t q) {
    if (p.empty()) throw std::invalid_argument("variable_rank_penalty: empty distribution");
    double sum = 0, h = 0;
    for (double pk : p) {
        if (pk < 0) throw std::invalid_argument("variable_rank_penalty: negative mass");
        sum += pk;
        if (pk > 0) h -= pk * std::log2(pk);
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("variable_rank_penalty: distribution does not sum to 1");
    double logq = std::log2(static_cast<double>(q));
    return {h / logq, std::log2(static_cast<double>(p.size())) / logq};
}

// --- codec rates (q-ary symbols per channel use) --------------------------------

inline long mmc_codec_rate(int n, const Shape& mu) {
    Shape kappa = mmc_typical_kappa(n, mu);
    long r = 0;
    for (int i = 1; i <= mu.s(); ++i) r += static_cast<long>(kappa.at(i)) * (mu.at(i) - kappa.at(i));
    return r;
}

inline long amc_codec_rate(int n, const Shape& mu, int v) {
    long r = 0;
    for (int i = 1; i <= mu.s(); ++i) r += static_cast<long>(n - v) * (mu.at(i) - v);
    return r;
}

}  // namespace chainring
