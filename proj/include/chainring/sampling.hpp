// sampling.hpp — uniform random generation of channel ingredients: ambient
// matrices by free-cell draws, full-rank and invertible matrices by
// rejection, and rank-t noise via the B*E factorization.
//
// Rejection is exactly uniform and its acceptance probability
// prod_i (1 - q^{i-N}) stays high at the sizes simulated here.  Rank-t noise
// is constructive instead: T_t can be an exponentially small fraction of the
// ambient set.  Every rank-t matrix factors as B*E in exactly |GL_t(R)| ways
// (B full column rank, E full row rank), so the product of independent
// uniform factors is uniform; the desk-scale tests certify this fiber count
// exhaustively.

#pragma once

#include <stdexcept>
#include <string>

#include "counting.hpp"
#include "linalg.hpp"
#include "matrix.hpp"
#include "rng.hpp"

namespace chainring {

// Uniform over R^{n x mu}: every free pi-adic cell drawn uniformly from the
// residue set.
inline Mat uniform_matrix(Rng& rng, const RingPtr& ring, int n, const Shape& mu) {
    const long cells = ambient_cell_count(n, mu);
    std::vector<uint32_t> digits(static_cast<size_t>(cells));
    for (auto& d : digits) d = rng.uniform_below(static_cast<uint32_t>(ring->q()));
    return mat_from_ambient_digits(ring, n, mu, digits);
}

// Uniform over full-column-rank N x n matrices (shape (n, ..., n)).
inline Mat uniform_full_column_rank(Rng& rng, const RingPtr& ring, int N, int n,
                                    int* retries = nullptr) {
    if (n > N) throw std::invalid_argument("uniform_full_column_rank: n > N");
    const int s = static_cast<int>(ring->s());
    int tries = 0;
    for (;;) {
        Mat A = uniform_matrix(rng, ring, N, Shape::constant(n, s));
        ++tries;
        if (rank_predicates(A).full_column_rank) {
            if (retries) *retries = tries - 1;
            return A;
        }
    }
}

// Uniform over full-row-rank t x mu matrices with rows in R^mu.
inline Mat uniform_full_row_rank(Rng& rng, const RingPtr& ring, int t, const Shape& mu,
                                 int* retries = nullptr) {
    if (t > mu.at(1)) throw std::invalid_argument("uniform_full_row_rank: t > mu_1");
    int tries = 0;
    for (;;) {
        Mat E = uniform_matrix(rng, ring, t, mu);
        ++tries;
        if (rank_predicates(E).full_row_rank) {
            if (retries) *retries = tries - 1;
            return E;
        }
    }
}

// Uniform over GL_N(R).
inline Mat uniform_invertible(Rng& rng, const RingPtr& ring, int N) {
    return uniform_full_column_rank(rng, ring, N, N);
}

struct RankTSample {
    Mat z;  // N x m, uniform over rank-t matrices with rows in R^mu
    Mat b;  // N x t, uniform full column rank
    Mat e;  // t x m, uniform full row rank with rows in R^mu
};

inline RankTSample uniform_rank_t(Rng& rng, const RingPtr& ring, int N, const Shape& mu, int t) {
    if (t < 0 || t > N || t > mu.at(1))
        throw std::invalid_argument("uniform_rank_t: need 0 <= t <= min(N, mu_1)");
    if (t == 0) {
        return {Mat(ring, N, mu.last()), Mat(ring, N, 0), Mat(ring, 0, mu.last())};
    }
    Mat B = uniform_full_column_rank(rng, ring, N, t);
    Mat E = uniform_full_row_rank(rng, ring, t, mu);
    return {B * E, std::move(B), std::move(E)};
}

// Reference sampler: rejection on shape(), for desk-scale cross-checks only.
// Refuses when the estimated acceptance probability drops below min_accept.
inline Mat uniform_given_shape(Rng& rng, const RingPtr& ring, int n, const Shape& mu,
                               const Shape& kappa, double min_accept = 1e-4) {
    CountContext ctx{static_cast<int64_t>(ring->q()), static_cast<int>(ring->s())};
    bigint hits = matrix_shape_count(ctx, n, mu, kappa);
    bigint total = pow_int(ctx.q, static_cast<unsigned long>(ambient_cell_count(n, mu)));
    double accept = big_ratio_as_double(hits, total);
    if (accept < min_accept)
        throw std::domain_error("uniform_given_shape: acceptance probability " +
                                std::to_string(accept) + " below " + std::to_string(min_accept));
    for (;;) {
        Mat X = uniform_matrix(rng, ring, n, mu);
        if (shape_of(X) == kappa) return X;
    }
}

}  // namespace chainring
