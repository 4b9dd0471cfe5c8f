// linalg.hpp — row canonical form, Smith normal form, shape and rank
// predicates, inversion and left-division over a finite chain ring.
//
// The row canonical form generalizes the reduced row echelon form to chain
// rings: pivots are pi powers ordered by degree then column, pivot columns
// are cleared below and residue-reduced above.  It is the unique such form in
// each left-equivalence class, which is what the decoders rely on.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace chainring {

struct Pivot {
    int row = 0;
    int col = 0;
    unsigned degree = 0;
};

struct RcfResult {
    Mat rcf;
    Mat transform;  // invertible, transform * input == rcf
    std::vector<Pivot> pivots;
};

// Reduction to row canonical form in O(n m min(n, m)) ring operations.
// Pivot selection: among minimum-degree entries of the working rows, the
// earliest column wins, then the topmost row.
inline RcfResult rcf(const Mat& A) {
    const Ring& R = *A.ring();
    const int n = A.rows(), m = A.cols();
    RcfResult res{A, Mat::identity(A.ring(), n), {}};
    Mat& W = res.rcf;
    Mat& U = res.transform;

    int k = 0;
    while (k < n) {
        // Select the k-th pivot among rows k..n-1.  Scanning columns left to
        // right and rows top to bottom with strict improvement lands on the
        // earliest column holding a minimum-degree entry, topmost row first.
        int prow = -1, pcol = -1;
        unsigned pdeg = R.s();
        for (int j = 0; j < m && pdeg > 0; ++j)
            for (int i = k; i < n; ++i) {
                unsigned d = R.degree(W.rep(i, j));
                if (d < pdeg) {
                    pdeg = d;
                    prow = i;
                    pcol = j;
                }
            }
        if (prow < 0) break;  // remaining rows are all zero

        W.swap_rows(k, prow);
        U.swap_rows(k, prow);

        // normalize the pivot to pi^l
        uint64_t unit = R.pi_shift_right(W.rep(k, pcol), pdeg);
        if (unit != 1) {
            uint64_t inv = R.unit_inverse(unit);
            W.scale_row(k, inv);
            U.scale_row(k, inv);
        }

        // clear below, reduce above into the residue set of pi^l
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            uint64_t a = W.rep(i, pcol);
            uint64_t f = R.pi_shift_right(a, pdeg);
            if (f) {
                uint64_t c = R.neg(f);
                W.add_scaled_row(i, k, c);
                U.add_scaled_row(i, k, c);
            }
        }

        res.pivots.push_back({k, pcol, pdeg});
        ++k;
    }
    return res;
}

// The four row-canonical-form conditions, checked directly.
inline bool is_rcf(const Mat& A) {
    const Ring& R = *A.ring();
    const int n = A.rows(), m = A.cols();

    std::vector<std::optional<Pivot>> pivots(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        unsigned best = R.s();
        int col = -1;
        for (int j = 0; j < m; ++j) {
            unsigned d = R.degree(A.rep(i, j));
            if (d < best) { best = d; col = j; }
        }
        if (col >= 0) pivots[static_cast<size_t>(i)] = Pivot{i, col, best};
    }

    // 1. nonzero rows above zero rows
    bool seen_zero = false;
    for (int i = 0; i < n; ++i) {
        if (!pivots[static_cast<size_t>(i)]) seen_zero = true;
        else if (seen_zero) return false;
    }

    // 2. pivots ordered by degree, then by column within equal degree
    for (int i = 0; i + 1 < n; ++i) {
        const auto& a = pivots[static_cast<size_t>(i)];
        const auto& b = pivots[static_cast<size_t>(i + 1)];
        if (!a || !b) continue;
        if (a->degree > b->degree) return false;
        if (a->degree == b->degree && a->col > b->col) return false;
    }

    for (int i = 0; i < n; ++i) {
        if (!pivots[static_cast<size_t>(i)]) continue;
        const Pivot& p = *pivots[static_cast<size_t>(i)];
        // 3. pivot entries are pi powers
        if (A.rep(i, p.col) != R.pi_pow(p.degree)) return false;
        // 4. zero below, residue-reduced above
        for (int i2 = p.row + 1; i2 < n; ++i2)
            if (A.rep(i2, p.col) != 0) return false;
        for (int i2 = 0; i2 < p.row; ++i2)
            if (!R.in_residue_set(A.rep(i2, p.col), p.degree)) return false;
    }
    return true;
}

struct SmithResult {
    std::vector<uint64_t> d;       // diagonal entries, each pi^l or 0
    std::vector<unsigned> degrees; // degree of each d_i (s for zero)
    Mat u;                          // invertible n x n
    Mat v;                          // invertible m x m; u * A * v = diag(d)
};

// Smith normal form with diagonal entries normalized to pi powers.  Because
// the degree order on a chain ring is the divisibility order, the minimum
// degree entry of the working submatrix divides everything in it, so one
// sweep of row and column clearing per step suffices and the divisibility
// chain d_1 | d_2 | ... holds by construction.
inline SmithResult smith(const Mat& A) {
    const Ring& R = *A.ring();
    const int n = A.rows(), m = A.cols();
    const int r = std::min(n, m);
    SmithResult res{{}, {}, Mat::identity(A.ring(), n), Mat::identity(A.ring(), m)};
    Mat W = A;

    for (int k = 0; k < r; ++k) {
        int prow = -1, pcol = -1;
        unsigned pdeg = R.s();
        for (int i = k; i < n; ++i)
            for (int j = k; j < m; ++j) {
                unsigned d = R.degree(W.rep(i, j));
                if (d < pdeg) { pdeg = d; prow = i; pcol = j; }
            }
        if (prow < 0) break;  // all remaining entries are zero

        W.swap_rows(k, prow);
        res.u.swap_rows(k, prow);
        W.swap_cols(k, pcol);
        res.v.swap_cols(k, pcol);

        uint64_t unit = R.pi_shift_right(W.rep(k, k), pdeg);
        if (unit != 1) {
            uint64_t inv = R.unit_inverse(unit);
            W.scale_row(k, inv);
            res.u.scale_row(k, inv);
        }

        for (int i = k + 1; i < n; ++i) {
            uint64_t f = R.pi_shift_right(W.rep(i, k), pdeg);
            if (f) {
                uint64_t c = R.neg(f);
                W.add_scaled_row(i, k, c);
                res.u.add_scaled_row(i, k, c);
            }
        }
        for (int j = k + 1; j < m; ++j) {
            uint64_t f = R.pi_shift_right(W.rep(k, j), pdeg);
            if (f) {
                uint64_t c = R.neg(f);
                W.add_scaled_col(j, k, c);
                res.v.add_scaled_col(j, k, c);
            }
        }
        res.d.push_back(R.pi_pow(pdeg));
        res.degrees.push_back(pdeg);
    }
    while (static_cast<int>(res.d.size()) < r) {
        res.d.push_back(0);
        res.degrees.push_back(R.s());
    }
    return res;
}

inline Mat diag_from_smith(const RingPtr& ring, int n, int m, const std::vector<uint64_t>& d) {
    Mat D(ring, n, m);
    for (size_t i = 0; i < d.size(); ++i) D.set_rep(static_cast<int>(i), static_cast<int>(i), d[i]);
    return D;
}

// shape(A): mu_i = #{k : deg(d_k) < i} for the Smith diagonal d.
inline Shape shape_of(const Mat& A) {
    const unsigned s = A.ring()->s();
    SmithResult sm = smith(A);
    std::vector<int> mu(s, 0);
    for (unsigned deg : sm.degrees)
        for (unsigned i = deg; i < s; ++i) ++mu[i];
    return Shape(std::move(mu));
}

// Same invariant computed from the RCF pivot degrees; used as a cross-check.
inline Shape shape_from_rcf(const Mat& A) {
    const unsigned s = A.ring()->s();
    RcfResult r = rcf(A);
    std::vector<int> mu(s, 0);
    for (const Pivot& p : r.pivots)
        for (unsigned i = p.degree; i < s; ++i) ++mu[i];
    return Shape(std::move(mu));
}

struct RankPredicates {
    bool full_rank = false;
    bool full_row_rank = false;
    bool full_column_rank = false;
    bool invertible = false;
};

inline RankPredicates rank_predicates(const Mat& A) {
    Shape sh = shape_of(A);
    const int n = A.rows(), m = A.cols();
    RankPredicates p;
    p.full_rank = sh.is_constant(std::min(n, m));
    p.full_row_rank = sh.is_constant(n);
    p.full_column_rank = sh.is_constant(m);
    p.invertible = n == m && p.full_rank;
    return p;
}

inline bool is_invertible(const Mat& A) { return rank_predicates(A).invertible; }

// Inverse of a square invertible matrix; the RCF transform of an invertible
// matrix is exactly its inverse.
inline Mat invert(const Mat& A) {
    if (A.rows() != A.cols()) throw std::domain_error("invert: matrix not square");
    RcfResult r = rcf(A);
    if (!(r.rcf == Mat::identity(A.ring(), A.rows())))
        throw std::domain_error("invert: matrix not invertible");
    return r.transform;
}

struct NoSolution : std::domain_error {
    int row;
    explicit NoSolution(int certificate_row)
        : std::domain_error("solve_left: no solution; row " + std::to_string(certificate_row) +
                            " of the right-hand side is outside the row span"),
          row(certificate_row) {}
};

// One solution X of X * A = B (free coordinates zero in Smith coordinates).
// A is n x m, B is k x m; X is k x n.  Throws NoSolution with the index of an
// offending row of B when B's rows are not in the row span of A.
inline Mat solve_left(const Mat& A, const Mat& B) {
    if (!A.ring()->same(*B.ring())) throw std::invalid_argument("mixed-ring matrices");
    if (A.cols() != B.cols()) throw std::invalid_argument("solve_left: column mismatch");
    const Ring& R = *A.ring();
    const int n = A.rows(), m = A.cols(), k = B.rows();
    const int r = std::min(n, m);

    SmithResult sm = smith(A);   // u A v = D
    Mat C = B * sm.v;            // solve Y D = C, then X = Y u
    Mat Y(A.ring(), k, n);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < m; ++j) {
            uint64_t c = C.rep(i, j);
            if (j >= r || sm.d[static_cast<size_t>(j)] == 0) {
                if (c != 0) throw NoSolution(i);
                continue;
            }
            unsigned l = sm.degrees[static_cast<size_t>(j)];
            if (R.degree(c) < l) throw NoSolution(i);
            Y.set_rep(i, j, R.pi_shift_right(c, l));
        }
    }
    return Y * sm.u;
}

}  // namespace chainring
