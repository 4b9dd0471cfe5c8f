// matrix.hpp — dense matrices over a finite chain ring, with exact
// dimension-checked arithmetic and the pi-adic free-cell construction for
// matrices whose rows are constrained to an ambient module R^mu.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ring.hpp"
#include "shape.hpp"

namespace chainring {

class Mat {
  public:
    Mat(RingPtr ring, int rows, int cols)
        : ring_(std::move(ring)), n_(rows), m_(cols), a_(checked_size(rows, cols), 0) {
        if (!ring_) throw std::invalid_argument("null ring");
    }

    static Mat identity(RingPtr ring, int n) {
        Mat I(std::move(ring), n, n);
        for (int i = 0; i < n; ++i) I.set_rep(i, i, 1);
        return I;
    }

    // Test and notation convenience: rows of canonical representatives.
    static Mat from_rows(RingPtr ring, std::initializer_list<std::initializer_list<uint64_t>> rows) {
        int n = static_cast<int>(rows.size());
        int m = n == 0 ? 0 : static_cast<int>(rows.begin()->size());
        Mat r(std::move(ring), n, m);
        int i = 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != m) throw std::invalid_argument("ragged rows");
            int j = 0;
            for (uint64_t v : row) r.set_rep(i, j++, v);
            ++i;
        }
        return r;
    }

    const RingPtr& ring() const { return ring_; }
    int rows() const { return n_; }
    int cols() const { return m_; }

    uint64_t rep(int i, int j) const { return a_[index(i, j)]; }
    void set_rep(int i, int j, uint64_t v) {
        if (v >= ring_->size()) throw std::invalid_argument("element representative out of range");
        a_[index(i, j)] = v;
    }

    Elem operator()(int i, int j) const { return Elem(ring_, rep(i, j)); }
    void set(int i, int j, const Elem& e) {
        if (!e.ring()->same(*ring_)) throw std::invalid_argument("mixed-ring assignment");
        set_rep(i, j, e.rep());
    }

    bool is_zero() const {
        for (uint64_t v : a_)
            if (v) return false;
        return true;
    }

    // --- elementary row/column operations ---------------------------------

    void swap_rows(int i, int j) {
        check_row(i); check_row(j);
        if (i == j) return;
        for (int k = 0; k < m_; ++k) std::swap(a_[index(i, k)], a_[index(j, k)]);
    }

    void scale_row(int i, uint64_t c) {
        check_row(i);
        for (int k = 0; k < m_; ++k) a_[index(i, k)] = ring_->mul(a_[index(i, k)], c);
    }

    // row[dst] += c * row[src]
    void add_scaled_row(int dst, int src, uint64_t c) {
        check_row(dst); check_row(src);
        for (int k = 0; k < m_; ++k)
            a_[index(dst, k)] = ring_->add(a_[index(dst, k)], ring_->mul(c, a_[index(src, k)]));
    }

    void swap_cols(int i, int j) {
        check_col(i); check_col(j);
        if (i == j) return;
        for (int k = 0; k < n_; ++k) std::swap(a_[index(k, i)], a_[index(k, j)]);
    }

    void scale_col(int j, uint64_t c) {
        check_col(j);
        for (int k = 0; k < n_; ++k) a_[index(k, j)] = ring_->mul(a_[index(k, j)], c);
    }

    // col[dst] += c * col[src]
    void add_scaled_col(int dst, int src, uint64_t c) {
        check_col(dst); check_col(src);
        for (int k = 0; k < n_; ++k)
            a_[index(k, dst)] = ring_->add(a_[index(k, dst)], ring_->mul(c, a_[index(k, src)]));
    }

    // --- whole-matrix operations -------------------------------------------

    Mat transpose() const {
        Mat r(ring_, m_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < m_; ++j) r.a_[r.index(j, i)] = a_[index(i, j)];
        return r;
    }

    // Rows [r0, r0+nr), columns [c0, c0+nc).
    Mat submatrix(int r0, int c0, int nr, int nc) const {
        if (r0 < 0 || c0 < 0 || nr < 0 || nc < 0 || r0 + nr > n_ || c0 + nc > m_)
            throw std::invalid_argument("submatrix out of range");
        Mat r(ring_, nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) r.a_[r.index(i, j)] = a_[index(r0 + i, c0 + j)];
        return r;
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        check_same_dims(a, b);
        Mat r(a.ring_, a.n_, a.m_);
        for (size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = a.ring_->add(a.a_[k], b.a_[k]);
        return r;
    }

    friend Mat operator-(const Mat& a, const Mat& b) {
        check_same_dims(a, b);
        Mat r(a.ring_, a.n_, a.m_);
        for (size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = a.ring_->sub(a.a_[k], b.a_[k]);
        return r;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        check_same_ring(a, b);
        if (a.m_ != b.n_) throw std::invalid_argument("matmul dimension mismatch");
        const Ring& R = *a.ring_;
        Mat r(a.ring_, a.n_, b.m_);
        for (int i = 0; i < a.n_; ++i)
            for (int k = 0; k < a.m_; ++k) {
                uint64_t aik = a.a_[a.index(i, k)];
                if (!aik) continue;
                for (int j = 0; j < b.m_; ++j) {
                    uint64_t prod = R.mul(aik, b.a_[b.index(k, j)]);
                    r.a_[r.index(i, j)] = R.add(r.a_[r.index(i, j)], prod);
                }
            }
        return r;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.ring_->same(*b.ring_) && a.n_ == b.n_ && a.m_ == b.m_ && a.a_ == b.a_;
    }

    friend Mat hstack(const Mat& a, const Mat& b) {
        check_same_ring(a, b);
        if (a.n_ != b.n_) throw std::invalid_argument("hstack row mismatch");
        Mat r(a.ring_, a.n_, a.m_ + b.m_);
        for (int i = 0; i < a.n_; ++i) {
            for (int j = 0; j < a.m_; ++j) r.a_[r.index(i, j)] = a.a_[a.index(i, j)];
            for (int j = 0; j < b.m_; ++j) r.a_[r.index(i, a.m_ + j)] = b.a_[b.index(i, j)];
        }
        return r;
    }

    friend Mat vstack(const Mat& a, const Mat& b) {
        check_same_ring(a, b);
        if (a.m_ != b.m_) throw std::invalid_argument("vstack column mismatch");
        Mat r(a.ring_, a.n_ + b.n_, a.m_);
        for (int i = 0; i < a.n_; ++i)
            for (int j = 0; j < a.m_; ++j) r.a_[r.index(i, j)] = a.a_[a.index(i, j)];
        for (int i = 0; i < b.n_; ++i)
            for (int j = 0; j < a.m_; ++j) r.a_[r.index(a.n_ + i, j)] = b.a_[b.index(i, j)];
        return r;
    }

  private:
    RingPtr ring_;
    int n_, m_;
    std::vector<uint64_t> a_;

    static size_t checked_size(int rows, int cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
        return static_cast<size_t>(rows) * static_cast<size_t>(cols);
    }

    size_t index(int i, int j) const {
        check_row(i); check_col(j);
        return static_cast<size_t>(i) * static_cast<size_t>(m_) + static_cast<size_t>(j);
    }

    void check_row(int i) const {
        if (i < 0 || i >= n_) throw std::out_of_range("row index");
    }
    void check_col(int j) const {
        if (j < 0 || j >= m_) throw std::out_of_range("column index");
    }

    static void check_same_ring(const Mat& a, const Mat& b) {
        if (!a.ring_->same(*b.ring_)) throw std::invalid_argument("mixed-ring matrices");
    }
    static void check_same_dims(const Mat& a, const Mat& b) {
        check_same_ring(a, b);
        if (a.n_ != b.n_ || a.m_ != b.m_) throw std::invalid_argument("dimension mismatch");
    }
};

// --- the pi-adic free-cell pattern for R^{n x mu} ---------------------------
//
// Every X with rows in R^mu decomposes as X = X_0 + pi X_1 + ... where layer
// X_i is free over the residue set on columns 1..mu_{i+1} and zero elsewhere.
// This gives a bijection between R^{n x mu} and sequences of n|mu| residue
// digits, ordered layer-major, then row-major, then column-major.

inline long ambient_cell_count(int n, const Shape& mu) { return static_cast<long>(n) * mu.sum(); }

// True iff every row of X lies in R^mu: entry (i, j) must have degree >= l
// whenever column j belongs to the ideal <pi^l> block of the ambient space.
inline bool rows_in_ambient(const Mat& X, const Shape& mu) {
    const Ring& R = *X.ring();
    if (mu.s() != static_cast<int>(R.s())) throw std::invalid_argument("shape length != chain length");
    if (X.cols() < mu.last()) throw std::invalid_argument("matrix narrower than ambient packet");
    for (int j = 0; j < X.cols(); ++j) {
        // level(j): least l with j < mu_{l+1}; columns beyond mu_s must be zero
        unsigned level = R.s();
        for (int l = 0; l < mu.s(); ++l) {
            if (j < mu.at(l + 1)) { level = static_cast<unsigned>(l); break; }
        }
        for (int i = 0; i < X.rows(); ++i)
            if (R.degree(X.rep(i, j)) < level) return false;
    }
    return true;
}

inline Mat mat_from_ambient_digits(const RingPtr& ring, int n, const Shape& mu,
                                   std::span<const uint32_t> digits) {
    const Ring& R = *ring;
    if (mu.s() != static_cast<int>(R.s())) throw std::invalid_argument("shape length != chain length");
    if (static_cast<long>(digits.size()) != ambient_cell_count(n, mu))
        throw std::invalid_argument("digit count != n|mu|");
    Mat X(ring, n, mu.last());
    size_t pos = 0;
    for (int layer = 0; layer < mu.s(); ++layer) {
        uint64_t w = R.pi_pow(static_cast<unsigned>(layer));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < mu.at(layer + 1); ++j) {
                uint64_t d = digits[pos++];
                if (d >= R.q()) throw std::invalid_argument("digit out of residue range");
                X.set_rep(i, j, R.add(X.rep(i, j), R.mul(d, w)));
            }
    }
    return X;
}

inline std::vector<uint32_t> ambient_digits_from_mat(const Mat& X, const Shape& mu) {
    const Ring& R = *X.ring();
    if (!rows_in_ambient(X, mu)) throw std::invalid_argument("matrix rows not in R^mu");
    std::vector<uint32_t> digits;
    digits.reserve(static_cast<size_t>(ambient_cell_count(X.rows(), mu)));
    for (int layer = 0; layer < mu.s(); ++layer)
        for (int i = 0; i < X.rows(); ++i)
            for (int j = 0; j < mu.at(layer + 1); ++j) {
                uint64_t digit = R.pi_shift_right(X.rep(i, j), static_cast<unsigned>(layer)) % R.q();
                digits.push_back(static_cast<uint32_t>(digit));
            }
    return digits;
}

}  // namespace chainring
