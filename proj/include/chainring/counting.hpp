// counting.hpp — exact enumeration over (q, s) chain rings: Gaussian
// coefficients, submodule counts, matrix-by-shape counts, and a brute-force
// enumeration oracle for desk-scale instances.  All counts are arbitrary
// precision; no floating point enters any count.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>
#include <vector>

#include "linalg.hpp"
#include "matrix.hpp"
#include "shape.hpp"

namespace chainring {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

// Pure arithmetic context: q is the residue field size, s the chain length.
// No ring elements are involved, so q here is unbounded.
struct CountContext {
    int64_t q;
    int s;
};

inline bigint pow_int(int64_t base, unsigned long e) {
    bigint r = 1;
    for (unsigned long i = 0; i < e; ++i) r *= base;
    return r;
}

// log2 of a positive big integer, without overflowing double.
inline double log2_big(const bigint& x) {
    if (x <= 0) throw std::domain_error("log2_big: non-positive argument");
    unsigned bits = boost::multiprecision::msb(x);  // floor(log2 x)
    if (bits <= 52) return std::log2(x.convert_to<double>());
    bigint top = x >> (bits - 52);
    return static_cast<double>(bits - 52) + std::log2(top.convert_to<double>());
}

inline double log2_big(const bigrat& x) {
    return log2_big(boost::multiprecision::numerator(x)) -
           log2_big(boost::multiprecision::denominator(x));
}

inline double logq_big(const bigint& x, int64_t q) {
    return log2_big(x) / std::log2(static_cast<double>(q));
}

inline double logq_big(const bigrat& x, int64_t q) {
    return log2_big(x) / std::log2(static_cast<double>(q));
}

inline double big_ratio_as_double(const bigint& num, const bigint& den) {
    return std::exp2(log2_big(num) - log2_big(den));
}

// Gaussian coefficient [m k]_q = prod_{i<k} (q^m - q^i)/(q^k - q^i);
// 0 when k > m, 1 when k = 0.
inline bigint gaussian(const CountContext& ctx, int m, int k) {
    if (m < 0 || k < 0) throw std::invalid_argument("gaussian: negative argument");
    if (k > m) return 0;
    bigint num = 1, den = 1;
    bigint qm = pow_int(ctx.q, static_cast<unsigned long>(m));
    bigint qk = pow_int(ctx.q, static_cast<unsigned long>(k));
    bigint qi = 1;
    for (int i = 0; i < k; ++i) {
        num *= qm - qi;
        den *= qk - qi;
        qi *= ctx.q;
    }
    bigint res = num / den;
    if (res * den != num) throw std::logic_error("gaussian: non-integral quotient");
    return res;
}

// Number of submodules of R^mu with shape kappa:
// prod_i q^{(mu_i - kappa_i) kappa_{i-1}} [mu_i - kappa_{i-1}, kappa_i - kappa_{i-1}].
inline bigint submodule_count(const CountContext& ctx, const Shape& mu, const Shape& kappa) {
    if (mu.s() != ctx.s || kappa.s() != ctx.s)
        throw std::invalid_argument("submodule_count: shape length != s");
    if (!kappa.subshape_of(mu)) return 0;
    bigint res = 1;
    for (int i = 1; i <= ctx.s; ++i) {
        res *= pow_int(ctx.q, static_cast<unsigned long>((mu.at(i) - kappa.at(i)) * kappa.at(i - 1)));
        res *= gaussian(ctx, mu.at(i) - kappa.at(i - 1), kappa.at(i) - kappa.at(i - 1));
    }
    return res;
}

// |T_kappa(R^{n x mu})|: matrices with rows in R^mu and shape kappa.
// The rational factor prod (1 - q^{i-n}) is folded in exactly:
// q^{n|kappa|} prod_{i<kappa_s} (1 - q^{i-n})
//   = q^{n(|kappa| - kappa_s)} prod_{i<kappa_s} (q^n - q^i).
inline bigint matrix_shape_count(const CountContext& ctx, int n, const Shape& mu,
                                 const Shape& kappa) {
    if (!kappa.subshape_of(mu) || !kappa.bounded_by(n)) return 0;
    bigint res = submodule_count(ctx, mu, kappa);
    res *= pow_int(ctx.q, static_cast<unsigned long>(n) *
                              static_cast<unsigned long>(kappa.sum() - kappa.last()));
    bigint qn = pow_int(ctx.q, static_cast<unsigned long>(n));
    bigint qi = 1;
    for (int i = 0; i < kappa.last(); ++i) {
        res *= qn - qi;
        qi *= ctx.q;
    }
    return res;
}

// Number of full-row-rank matrices in R^{n x m}:
// q^{snm} prod_{i<n} (1 - q^{i-m}) = q^{(s-1)nm} prod_{i<n} (q^m - q^i).
inline bigint full_row_rank_count(const CountContext& ctx, int n, int m) {
    if (n > m) throw std::domain_error("full_row_rank_count: n > m");
    bigint res = pow_int(ctx.q, static_cast<unsigned long>(ctx.s - 1) *
                                    static_cast<unsigned long>(n) * static_cast<unsigned long>(m));
    bigint qm = pow_int(ctx.q, static_cast<unsigned long>(m));
    bigint qi = 1;
    for (int i = 0; i < n; ++i) {
        res *= qm - qi;
        qi *= ctx.q;
    }
    return res;
}

// Exhaustive tally of R^{n x mu} by shape, computed through the pi-adic
// free-cell construction.  Desk scale only: refuses instances larger than
// 2^22 matrices.  Enumeration is partitioned across worker threads.
inline std::map<Shape, bigint> enumerate_by_shape(const RingPtr& ring, int n, const Shape& mu,
                                                  unsigned threads = 0) {
    const long cells = ambient_cell_count(n, mu);
    const double log2_total = static_cast<double>(cells) * std::log2(static_cast<double>(ring->q()));
    if (log2_total > 22.0)
        throw std::domain_error("enumerate_by_shape: instance has q^(n|mu|) = 2^" +
                                std::to_string(log2_total) + " matrices, above the 2^22 cap");
    const uint64_t total = [&] {
        uint64_t t = 1;
        for (long i = 0; i < cells; ++i) t *= ring->q();
        return t;
    }();

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, 8);

    const uint64_t q = ring->q();
    auto worker = [&](uint64_t lo, uint64_t hi, std::map<Shape, uint64_t>& tally) {
        std::vector<uint32_t> digits(static_cast<size_t>(cells));
        for (uint64_t idx = lo; idx < hi; ++idx) {
            uint64_t x = idx;
            for (long c = 0; c < cells; ++c) {
                digits[static_cast<size_t>(c)] = static_cast<uint32_t>(x % q);
                x /= q;
            }
            Mat A = mat_from_ambient_digits(ring, n, mu, digits);
            ++tally[shape_of(A)];
        }
    };

    std::vector<std::map<Shape, uint64_t>> partial(threads);
    std::vector<std::thread> pool;
    uint64_t chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        uint64_t lo = t * chunk;
        uint64_t hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(worker, lo, hi, std::ref(partial[t]));
    }
    for (auto& th : pool) th.join();

    std::map<Shape, bigint> out;
    for (const auto& tally : partial)
        for (const auto& [shape, count] : tally) out[shape] += count;
    return out;
}

}  // namespace chainring
