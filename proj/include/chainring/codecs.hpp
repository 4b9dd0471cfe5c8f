// codecs.hpp — the three coding schemes: principal-RCF codes for the
// multiplicative channel, error-trapping codes for the additive channel, and
// the combined scheme for the multiplicative-additive channel.
//
// Symbols are residue digits in [0, q).  Across all free-cell patterns the
// wire order is layer-major, then row-major, then column-major; this ordering
// is the codec's wire contract.
//
// Fixed-rank decoding is zero-error: a Success outcome always carries exactly
// the transmitted symbols, and trap misses are detected and reported as
// Failure values.  In variable-rank mode the decoder substitutes the observed
// trap rank for t, so undetected errors become possible and are measured by
// the simulation harness rather than guarded against.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "matrix.hpp"

namespace chainring {

using Symbols = std::vector<uint32_t>;

enum class DecodeStatus { Success, Failure };

struct DecodeOutcome {
    DecodeStatus status;
    Symbols symbols;     // meaningful iff status == Success
    std::string reason;  // nonempty iff status == Failure

    bool ok() const { return status == DecodeStatus::Success; }

    static DecodeOutcome success(Symbols s) { return {DecodeStatus::Success, std::move(s), {}}; }
    static DecodeOutcome failure(std::string why) {
        return {DecodeStatus::Failure, {}, std::move(why)};
    }
};

// --- principal row canonical forms ------------------------------------------
//
// A principal RCF in T_kappa(R^{rows x mu}) has diagonal
// (1,...,1, pi,...,pi, ..., 0,...,0) with kappa_{i+1}-kappa_i entries pi^i.
// Layer i carries that diagonal block on columns < kappa_{i+1} and free
// digits on columns kappa_{i+1}..mu_{i+1}-1 of rows < kappa_{i+1}.

inline long principal_rcf_symbol_count(const Shape& mu, const Shape& kappa) {
    long total = 0;
    for (int i = 1; i <= mu.s(); ++i)
        total += static_cast<long>(kappa.at(i)) * (mu.at(i) - kappa.at(i));
    return total;
}

inline Mat principal_rcf_from_digits(const RingPtr& ring, int rows, const Shape& mu,
                                     const Shape& kappa, const Symbols& digits) {
    const Ring& R = *ring;
    if (mu.s() != static_cast<int>(R.s())) throw std::invalid_argument("shape length != s");
    if (!kappa.subshape_of(mu) || !kappa.bounded_by(rows))
        throw std::invalid_argument("kappa must be a subshape of both mu and rows");
    if (static_cast<long>(digits.size()) != principal_rcf_symbol_count(mu, kappa))
        throw std::invalid_argument("wrong symbol count");

    Mat X(ring, rows, mu.last());
    size_t pos = 0;
    for (int layer = 0; layer < mu.s(); ++layer) {
        const uint64_t w = R.pi_pow(static_cast<unsigned>(layer));
        const int klo = kappa.at(layer), khi = kappa.at(layer + 1);
        for (int d = klo; d < khi; ++d) X.set_rep(d, d, R.add(X.rep(d, d), w));
        for (int i = 0; i < khi; ++i)
            for (int j = khi; j < mu.at(layer + 1); ++j) {
                uint64_t digit = digits[pos++];
                if (digit >= R.q()) throw std::invalid_argument("symbol out of residue range");
                X.set_rep(i, j, R.add(X.rep(i, j), R.mul(digit, w)));
            }
    }
    return X;
}

inline Symbols digits_from_principal_rcf(const Mat& X, const Shape& mu, const Shape& kappa) {
    const Ring& R = *X.ring();
    Symbols digits;
    digits.reserve(static_cast<size_t>(principal_rcf_symbol_count(mu, kappa)));
    for (int layer = 0; layer < mu.s(); ++layer) {
        const int khi = kappa.at(layer + 1);
        for (int i = 0; i < khi; ++i)
            for (int j = khi; j < mu.at(layer + 1); ++j)
                digits.push_back(static_cast<uint32_t>(
                    R.pi_shift_right(X.rep(i, j), static_cast<unsigned>(layer)) % R.q()));
    }
    return digits;
}

// --- MMC: principal-RCF codebook ---------------------------------------------

class MmcCode {
  public:
    // The default codebook shape kappa_i = min(n, floor(mu_i/2)) maximizes the
    // rate term sum kappa_i (mu_i - kappa_i); an explicit kappa <= n, mu may
    // be supplied instead.
    MmcCode(RingPtr ring, int n, Shape mu, std::optional<Shape> kappa = std::nullopt)
        : ring_(std::move(ring)), n_(n), mu_(std::move(mu)),
          kappa_(kappa ? std::move(*kappa) : make_kappa(n_, mu_)) {
        if (n_ < 1) throw std::invalid_argument("MmcCode: n must be >= 1");
        if (!kappa_.subshape_of(mu_) || !kappa_.bounded_by(n_))
            throw std::invalid_argument("MmcCode: kappa must be a subshape of both n and mu");
    }

    const RingPtr& ring() const { return ring_; }
    int n() const { return n_; }
    const Shape& mu() const { return mu_; }
    const Shape& kappa() const { return kappa_; }
    long symbol_count() const { return principal_rcf_symbol_count(mu_, kappa_); }

    Mat encode(const Symbols& symbols) const {
        return principal_rcf_from_digits(ring_, n_, mu_, kappa_, symbols);
    }

    Symbols extract(const Mat& X) const { return digits_from_principal_rcf(X, mu_, kappa_); }

    // The decoder is the row canonical form itself: RCF(Y) restricted to its
    // nonzero rows recovers the transmitted principal RCF exactly.
    DecodeOutcome decode(const Mat& Y) const {
        if (!Y.ring()->same(*ring_)) return DecodeOutcome::failure("wrong ring");
        if (Y.cols() != mu_.last()) return DecodeOutcome::failure("wrong packet length");
        Mat F = rcf(Y).rcf;
        Mat Xhat(ring_, n_, mu_.last());
        const int copy = std::min(n_, F.rows());
        for (int i = 0; i < copy; ++i)
            for (int j = 0; j < F.cols(); ++j) Xhat.set_rep(i, j, F.rep(i, j));
        for (int i = copy; i < F.rows(); ++i)
            for (int j = 0; j < F.cols(); ++j)
                if (F.rep(i, j) != 0) return DecodeOutcome::failure("not a codeword");
        Symbols symbols = extract_checked(Xhat);
        if (symbols.empty() && symbol_count() != 0)
            return DecodeOutcome::failure("not a codeword");
        return DecodeOutcome::success(std::move(symbols));
    }

  private:
    RingPtr ring_;
    int n_;
    Shape mu_;
    Shape kappa_;

    static Shape make_kappa(int n, const Shape& mu) {
        std::vector<int> k(static_cast<size_t>(mu.s()));
        for (int i = 1; i <= mu.s(); ++i)
            k[static_cast<size_t>(i - 1)] = std::min(n, mu.at(i) / 2);
        return Shape(std::move(k));
    }

    // Extraction with full validation: the candidate must reconstruct
    // bit-exactly, otherwise it was not a principal RCF of shape kappa.
    Symbols extract_checked(const Mat& Xhat) const {
        if (!rows_in_ambient(Xhat, mu_)) return {};
        Symbols symbols = digits_from_principal_rcf(Xhat, mu_, kappa_);
        if (!(encode(symbols) == Xhat)) return {};
        return symbols;
    }

    friend class MamcCode;
};

// --- AMC: error trapping -------------------------------------------------------

class AmcCode {
  public:
    // v >= t reserves a v x v trap; decoding succeeds iff the trap block has
    // full noise rank.
    AmcCode(RingPtr ring, int n, Shape mu, int t, int v, bool variable_rank = false)
        : ring_(std::move(ring)), n_(n), mu_(std::move(mu)), t_(t), v_(v),
          variable_rank_(variable_rank) {
        if (n_ < 1) throw std::invalid_argument("AmcCode: n must be >= 1");
        if (t_ < 0 || v_ < t_) throw std::invalid_argument("AmcCode: need 0 <= t <= v");
        if (v_ > n_ || v_ >= mu_.at(1))
            throw std::invalid_argument("AmcCode: need v <= n and v < mu_1");
    }

    const RingPtr& ring() const { return ring_; }
    int n() const { return n_; }
    const Shape& mu() const { return mu_; }
    int t() const { return t_; }
    int v() const { return v_; }
    Shape data_mu() const { return mu_.minus(v_); }
    long symbol_count() const { return ambient_cell_count(n_ - v_, data_mu()); }

    Mat encode(const Symbols& symbols) const {
        if (static_cast<long>(symbols.size()) != symbol_count())
            throw std::invalid_argument("wrong symbol count");
        Mat U = mat_from_ambient_digits(ring_, n_ - v_, data_mu(),
                                        std::span<const uint32_t>(symbols));
        Mat X(ring_, n_, mu_.last());
        for (int i = 0; i < U.rows(); ++i)
            for (int j = 0; j < U.cols(); ++j) X.set_rep(v_ + i, v_ + j, U.rep(i, j));
        return X;
    }

    DecodeOutcome decode(const Mat& Y) const {
        if (!Y.ring()->same(*ring_)) return DecodeOutcome::failure("wrong ring");
        if (Y.rows() != n_ || Y.cols() != mu_.last())
            return DecodeOutcome::failure("wrong dimensions");
        const int m = mu_.last();
        Mat Y11 = Y.submatrix(0, 0, v_, v_);
        Mat Y12 = Y.submatrix(0, v_, v_, m - v_);
        Mat Y21 = Y.submatrix(v_, 0, n_ - v_, v_);
        Mat Y22 = Y.submatrix(v_, v_, n_ - v_, m - v_);

        Shape trap = shape_of(Y11);
        int r = t_;
        if (variable_rank_) {
            // substitute the observed trap rank; non-constant trap shapes
            // cannot be a full-rank product B1*E1 for any T
            r = trap.last();
            if (!trap.is_constant(r)) return DecodeOutcome::failure("trap-shape-mismatch");
        } else if (trap != Shape::constant(t_, mu_.s())) {
            return DecodeOutcome::failure("trap-shape-mismatch");
        }
        (void)r;

        Mat U(ring_, 0, 0);
        try {
            Mat Tbar = solve_left(Y11, Y21);  // Tbar * B1E1 = B2E1
            U = Y22 - Tbar * Y12;
        } catch (const NoSolution&) {
            return DecodeOutcome::failure("trap-shape-mismatch");
        }
        if (!rows_in_ambient(U, data_mu()))
            return DecodeOutcome::failure("recovered block outside the ambient module");
        std::vector<uint32_t> digits = ambient_digits_from_mat(U, data_mu());
        return DecodeOutcome::success(Symbols(digits.begin(), digits.end()));
    }

  private:
    RingPtr ring_;
    int n_;
    Shape mu_;
    int t_;
    int v_;
    bool variable_rank_;
};

// --- MAMC: combined scheme -----------------------------------------------------

class MamcCode {
  public:
    MamcCode(RingPtr ring, int n, int N, Shape mu, int t, int v, bool variable_rank = false)
        : ring_(std::move(ring)), n_(n), N_(N), mu_(std::move(mu)), t_(t), v_(v),
          variable_rank_(variable_rank) {
        if (n_ < 1 || N_ < n_) throw std::invalid_argument("MamcCode: need 1 <= n <= N");
        if (t_ < 0 || v_ < t_) throw std::invalid_argument("MamcCode: need 0 <= t <= v");
        if (v_ >= mu_.at(1)) throw std::invalid_argument("MamcCode: need v < mu_1");
        if (tall_case() && v_ > N_) throw std::invalid_argument("MamcCode: need v <= N");
        kappa_ = make_kappa();
    }

    // n + t > N: the codeword lives on N - v rows; otherwise on all n rows.
    bool tall_case() const { return n_ + t_ > N_; }
    int data_rows() const { return tall_case() ? N_ - v_ : n_; }

    const RingPtr& ring() const { return ring_; }
    int n() const { return n_; }
    int N() const { return N_; }
    const Shape& mu() const { return mu_; }
    const Shape& kappa() const { return kappa_; }
    int t() const { return t_; }
    int v() const { return v_; }
    Shape data_mu() const { return mu_.minus(v_); }
    long symbol_count() const { return principal_rcf_symbol_count(data_mu(), kappa_); }

    Mat encode(const Symbols& symbols) const {
        Mat Xbar = principal_rcf_from_digits(ring_, data_rows(), data_mu(), kappa_, symbols);
        Mat X(ring_, n_, mu_.last());
        const int row0 = n_ - data_rows();
        for (int i = 0; i < Xbar.rows(); ++i)
            for (int j = 0; j < Xbar.cols(); ++j) X.set_rep(row0 + i, v_ + j, Xbar.rep(i, j));
        return X;
    }

    // Decoding is one row canonical form: when the trap succeeds, RCF(Y) is
    // [Z1 Z2; 0 Xbar; 0 0] with the codeword block at rows t..t+kappa_s-1,
    // columns v..m-1.
    DecodeOutcome decode(const Mat& Y) const {
        if (!Y.ring()->same(*ring_)) return DecodeOutcome::failure("wrong ring");
        if (Y.rows() != N_ || Y.cols() != mu_.last())
            return DecodeOutcome::failure("wrong dimensions");
        Mat F = rcf(Y).rcf;
        const int m = mu_.last();
        const int nprime = std::min(n_ + v_, N_);
        Mat Yhat = F.submatrix(0, 0, N_, nprime);
        Shape got = shape_of(Yhat);

        int r = t_;
        if (variable_rank_) {
            r = got.at(1) - kappa_.at(1);
            if (r < 0) return DecodeOutcome::failure("trap-shape-mismatch");
        }
        if (got != kappa_.plus(r)) return DecodeOutcome::failure("trap-shape-mismatch");

        const int ks = kappa_.last();
        if (r + ks > N_) return DecodeOutcome::failure("trap-shape-mismatch");
        Mat Xtop = F.submatrix(r, v_, ks, m - v_);
        Mat Xbar(ring_, data_rows(), m - v_);
        for (int i = 0; i < ks; ++i)
            for (int j = 0; j < m - v_; ++j) Xbar.set_rep(i, j, Xtop.rep(i, j));
        if (!rows_in_ambient(Xbar, data_mu()))
            return DecodeOutcome::failure("recovered block outside the ambient module");
        Symbols symbols = digits_from_principal_rcf(Xbar, data_mu(), kappa_);
        if (!(principal_rcf_from_digits(ring_, data_rows(), data_mu(), kappa_, symbols) == Xbar))
            return DecodeOutcome::failure("recovered block is not a principal form");
        return DecodeOutcome::success(std::move(symbols));
    }

  private:
    RingPtr ring_;
    int n_, N_;
    Shape mu_;
    int t_, v_;
    bool variable_rank_;
    Shape kappa_;

    Shape make_kappa() const {
        std::vector<int> k(static_cast<size_t>(mu_.s()));
        const int cap = data_rows();
        for (int i = 1; i <= mu_.s(); ++i)
            k[static_cast<size_t>(i - 1)] = std::min(cap, (mu_.at(i) - v_) / 2);
        return Shape(std::move(k));
    }
};

}  // namespace chainring
