// channels.hpp — channel-law simulators for the three matrix channels:
// multiplicative (Y = AX), additive (Y = X + Z) and multiplicative-additive
// (Y = AX + Z), plus variable-rank noise and the randomization transform for
// non-uniform noise.
//
// Transmit functions take the RNG by value and are pure functions of
// (config, input, rng): a Monte Carlo harness derives one substream per trial
// and can fan trials across threads.  A and Z always come from disjoint
// substreams of the passed-in generator.

#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "linalg.hpp"
#include "matrix.hpp"
#include "rng.hpp"
#include "sampling.hpp"

namespace chainring {

struct AmbientSpace {
    RingPtr ring;
    Shape mu;

    AmbientSpace(RingPtr r, Shape shape) : ring(std::move(r)), mu(std::move(shape)) {
        if (mu.s() != static_cast<int>(ring->s()))
            throw std::invalid_argument("ambient shape length != chain length");
    }

    int packet_length() const { return mu.last(); }
};

struct FixedRank {
    int t;
};

struct VariableRank {
    std::vector<double> p;  // p[k] = Pr[T = k], k = 0..t
};

using NoiseModel = std::variant<FixedRank, VariableRank>;

inline int noise_max_rank(const NoiseModel& noise) {
    if (const auto* f = std::get_if<FixedRank>(&noise)) return f->t;
    return static_cast<int>(std::get<VariableRank>(noise).p.size()) - 1;
}

struct ChannelConfig {
    AmbientSpace ambient;
    int n;  // input rows
    int N;  // output rows
    NoiseModel noise;

    ChannelConfig(AmbientSpace amb, int n_in, int N_out, NoiseModel nz)
        : ambient(std::move(amb)), n(n_in), N(N_out), noise(std::move(nz)) {
        if (n < 0 || N < n) throw std::invalid_argument("channel requires 0 <= n <= N");
        int t = noise_max_rank(noise);
        if (t < 0 || t > N || t > ambient.mu.at(1))
            throw std::invalid_argument("noise rank must satisfy t <= min(N, mu_1)");
        if (const auto* v = std::get_if<VariableRank>(&noise)) {
            double sum = 0;
            for (double pk : v->p) {
                if (pk < 0) throw std::invalid_argument("noise distribution has negative mass");
                sum += pk;
            }
            if (std::fabs(sum - 1.0) > 1e-9)
                throw std::invalid_argument("noise distribution does not sum to 1");
        }
    }
};

inline void check_channel_input(const ChannelConfig& cfg, const Mat& X) {
    if (!X.ring()->same(*cfg.ambient.ring)) throw std::invalid_argument("input over wrong ring");
    if (X.rows() != cfg.n || X.cols() != cfg.ambient.packet_length())
        throw std::invalid_argument("input dimensions do not match the channel");
    if (!rows_in_ambient(X, cfg.ambient.mu))
        throw std::invalid_argument("input rows not in the ambient module");
}

// --- noise ------------------------------------------------------------------

struct NoiseDraw {
    int t;  // realized rank
    Mat z;
    Mat b;
    Mat e;
};

// Z uniform over rank-T matrices with rows in R^mu; T is the fixed rank or a
// draw from the configured distribution.
inline NoiseDraw draw_noise(const ChannelConfig& cfg, Rng& rng) {
    int t;
    if (const auto* f = std::get_if<FixedRank>(&cfg.noise)) {
        t = f->t;
    } else {
        const auto& p = std::get<VariableRank>(cfg.noise).p;
        double u = rng.next_double();
        t = static_cast<int>(p.size()) - 1;
        double acc = 0;
        for (size_t k = 0; k < p.size(); ++k) {
            acc += p[k];
            if (u < acc) { t = static_cast<int>(k); break; }
        }
    }
    RankTSample s = uniform_rank_t(rng, cfg.ambient.ring, cfg.N, cfg.ambient.mu, t);
    return {t, std::move(s.z), std::move(s.b), std::move(s.e)};
}

inline NoiseDraw variable_rank_noise(const ChannelConfig& cfg, Rng& rng) {
    if (!std::holds_alternative<VariableRank>(cfg.noise))
        throw std::invalid_argument("variable_rank_noise: channel noise is fixed-rank");
    return draw_noise(cfg, rng);
}

// --- the three channel laws --------------------------------------------------

struct MmcDraw {
    Mat y;
    Mat a;
};

// Y = A X with A uniform over full-column-rank N x n matrices.
inline MmcDraw mmc_transmit(const ChannelConfig& cfg, const Mat& X, Rng rng) {
    check_channel_input(cfg, X);
    Rng ra = rng.substream(0);
    Mat A = uniform_full_column_rank(ra, cfg.ambient.ring, cfg.N, cfg.n);
    return {A * X, std::move(A)};
}

struct AmcDraw {
    Mat y;
    NoiseDraw noise;
};

// Y = X + Z; requires a square channel (N = n).
inline AmcDraw amc_transmit(const ChannelConfig& cfg, const Mat& X, Rng rng) {
    if (cfg.N != cfg.n) throw std::invalid_argument("amc_transmit requires N = n");
    check_channel_input(cfg, X);
    Rng rz = rng.substream(1);
    NoiseDraw nz = draw_noise(cfg, rz);
    return {X + nz.z, std::move(nz)};
}

struct MamcDraw {
    Mat y;
    Mat a;
    NoiseDraw noise;
};

// Y = A X + Z with A and Z independent (disjoint substreams).
inline MamcDraw mamc_transmit(const ChannelConfig& cfg, const Mat& X, Rng rng) {
    check_channel_input(cfg, X);
    Rng ra = rng.substream(0);
    Rng rz = rng.substream(1);
    Mat A = uniform_full_column_rank(ra, cfg.ambient.ring, cfg.N, cfg.n);
    NoiseDraw nz = draw_noise(cfg, rz);
    return {A * X + nz.z, std::move(A), std::move(nz)};
}

// --- randomization transform for non-uniform noise ---------------------------

struct RandomizedPair {
    Mat x_prime;  // X = x_prime * q
    Mat y_prime;  // y_prime = P Y Q^{-1}
    Mat q;        // diag(Q', I), Q' uniform over GL_{mu_1}
    Mat p;        // uniform over GL_N
};

inline RandomizedPair randomize_transform(const AmbientSpace& ambient, const Mat& X, const Mat& Y,
                                          Rng rng) {
    if (!X.ring()->same(*ambient.ring) || !Y.ring()->same(*ambient.ring))
        throw std::invalid_argument("randomize_transform: wrong ring");
    const int m = ambient.packet_length();
    if (X.cols() != m || Y.cols() != m)
        throw std::invalid_argument("randomize_transform: packet length mismatch");
    const int mu1 = ambient.mu.at(1);

    Rng rq = rng.substream(0);
    Rng rp = rng.substream(1);
    Mat Q = Mat::identity(ambient.ring, m);
    if (mu1 > 0) {
        Mat Qp = uniform_invertible(rq, ambient.ring, mu1);
        for (int i = 0; i < mu1; ++i)
            for (int j = 0; j < mu1; ++j) Q.set_rep(i, j, Qp.rep(i, j));
    }
    Mat P = uniform_invertible(rp, ambient.ring, Y.rows());
    Mat Qinv = invert(Q);
    return {X * Qinv, P * Y * Qinv, std::move(Q), std::move(P)};
}

}  // namespace chainring
