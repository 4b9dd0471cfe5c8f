// composite.hpp — the ambient space Omega = Z_{d_1} x ... x Z_{d_m} for a
// divisibility chain d_m | ... | d_1, and its exact Chinese-remainder
// decomposition into chain-ring components.
//
// Omega is carried as m-tuples over Z_{d_1} whose j-th coordinate is a
// multiple of d_1/d_j.  Component ell projects entrywise mod p_ell^{s_ell};
// because the d_j chain makes the prime exponents non-increasing in j, each
// component's coordinate ideals are already sorted and read off as a shape
// mu^(ell) with mu_i = #{ j : t_{ell,j} >= s_ell - i + 1 }.  Coordinates with
// exponent zero project to the zero ideal, so mu^(ell) may have fewer than m
// active coordinates; projections keep all m columns, the trailing ones
// identically zero.

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "linalg.hpp"
#include "matrix.hpp"
#include "ring.hpp"
#include "rng.hpp"
#include "shape.hpp"

namespace chainring {

class CompositeAmbient {
  public:
    explicit CompositeAmbient(std::vector<int64_t> d) : d_(std::move(d)) {
        if (d_.empty()) throw std::invalid_argument("empty modulus chain");
        for (size_t j = 0; j < d_.size(); ++j) {
            if (d_[j] < 2) throw std::invalid_argument("moduli must be >= 2");
            if (j + 1 < d_.size() && d_[j] % d_[j + 1] != 0)
                throw std::invalid_argument("moduli must form a divisibility chain d_m | ... | d_1");
        }
    }

    int m() const { return static_cast<int>(d_.size()); }
    int64_t modulus() const { return d_[0]; }
    int64_t d(int j) const { return d_[static_cast<size_t>(j)]; }  // 0-based
    // coordinate j ranges over the multiples of d_1/d_j
    int64_t coordinate_multiplier(int j) const { return d_[0] / d_[static_cast<size_t>(j)]; }

  private:
    std::vector<int64_t> d_;
};

struct CompositeComponent {
    int64_t prime;
    unsigned s;        // exponent of the prime in d_1
    int64_t modulus;   // prime^s
    RingPtr ring;      // Z_{prime^s}
    Shape mu;          // component ambient shape
};

inline std::vector<CompositeComponent> decompose(const CompositeAmbient& omega) {
    std::vector<CompositeComponent> out;
    int64_t rest = omega.modulus();
    for (int64_t p = 2; rest > 1; ++p) {
        if (rest % p != 0) continue;
        unsigned s = 0;
        while (rest % p == 0) { rest /= p; ++s; }
        // exponent of p in each d_j
        std::vector<unsigned> t(static_cast<size_t>(omega.m()), 0);
        for (int j = 0; j < omega.m(); ++j) {
            int64_t dj = omega.d(j);
            while (dj % p == 0) { dj /= p; ++t[static_cast<size_t>(j)]; }
        }
        std::vector<int> mu(s, 0);
        for (unsigned i = 1; i <= s; ++i)
            for (int j = 0; j < omega.m(); ++j)
                if (t[static_cast<size_t>(j)] >= s - i + 1) ++mu[i - 1];
        int64_t ps = 1;
        for (unsigned i = 0; i < s; ++i) ps *= p;
        out.push_back({p, s, ps, Ring::integers_mod(static_cast<uint64_t>(p), s),
                       Shape(std::move(mu))});
    }
    return out;
}

// A matrix over Omega: n rows of m-tuples over Z_{d_1}, coordinate j a
// multiple of d_1/d_j.
class CompositeMat {
  public:
    CompositeMat(const CompositeAmbient& omega, int rows)
        : modulus_(omega.modulus()), n_(rows), m_(omega.m()),
          a_(static_cast<size_t>(rows) * static_cast<size_t>(omega.m()), 0) {}

    int rows() const { return n_; }
    int cols() const { return m_; }
    int64_t modulus() const { return modulus_; }

    int64_t at(int i, int j) const { return a_[index(i, j)]; }
    void set(int i, int j, int64_t v) {
        if (v < 0 || v >= modulus_) throw std::invalid_argument("entry out of range");
        a_[index(i, j)] = v;
    }

    friend CompositeMat operator+(const CompositeMat& a, const CompositeMat& b) {
        a.check_compatible(b);
        CompositeMat r = a;
        for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] = (a.a_[k] + b.a_[k]) % a.modulus_;
        return r;
    }

    friend bool operator==(const CompositeMat& a, const CompositeMat& b) {
        return a.modulus_ == b.modulus_ && a.n_ == b.n_ && a.m_ == b.m_ && a.a_ == b.a_;
    }

  private:
    int64_t modulus_;
    int n_, m_;
    std::vector<int64_t> a_;

    size_t index(int i, int j) const {
        if (i < 0 || i >= n_ || j < 0 || j >= m_) throw std::out_of_range("index");
        return static_cast<size_t>(i) * static_cast<size_t>(m_) + static_cast<size_t>(j);
    }
    void check_compatible(const CompositeMat& b) const {
        if (modulus_ != b.modulus_ || n_ != b.n_ || m_ != b.m_)
            throw std::invalid_argument("incompatible composite matrices");
    }
};

inline bool rows_in_omega(const CompositeAmbient& omega, const CompositeMat& X) {
    for (int j = 0; j < X.cols(); ++j) {
        int64_t mult = omega.coordinate_multiplier(j);
        for (int i = 0; i < X.rows(); ++i)
            if (X.at(i, j) % mult != 0) return false;
    }
    return true;
}

inline CompositeMat uniform_omega_matrix(Rng& rng, const CompositeAmbient& omega, int rows) {
    CompositeMat X(omega, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < omega.m(); ++j) {
            int64_t v = rng.uniform_below(static_cast<uint32_t>(omega.d(j)));
            X.set(i, j, v * omega.coordinate_multiplier(j));
        }
    return X;
}

// X^[ell]: entrywise reduction mod p^{s_ell}, as a matrix over the component
// chain ring (all m columns kept; trailing inactive coordinates are zero).
inline Mat project(const CompositeMat& X, const CompositeComponent& comp) {
    Mat Y(comp.ring, X.rows(), X.cols());
    for (int i = 0; i < X.rows(); ++i)
        for (int j = 0; j < X.cols(); ++j)
            Y.set_rep(i, j, static_cast<uint64_t>(X.at(i, j) % comp.modulus));
    return Y;
}

// CRT recombination, the inverse of projecting onto every component.
inline CompositeMat recombine(const CompositeAmbient& omega,
                              const std::vector<CompositeComponent>& comps,
                              const std::vector<Mat>& parts) {
    if (comps.size() != parts.size()) throw std::invalid_argument("component count mismatch");
    const int64_t M = omega.modulus();
    // CRT basis: c_ell = (M/m_ell) * ((M/m_ell)^{-1} mod m_ell)
    std::vector<int64_t> basis(comps.size());
    int64_t check = 1;
    for (size_t l = 0; l < comps.size(); ++l) {
        check *= comps[l].modulus;
        int64_t Ml = M / comps[l].modulus;
        int64_t inv = 0, t0 = 0, t1 = 1, r0 = comps[l].modulus, r1 = Ml % comps[l].modulus;
        while (r1 != 0) {
            int64_t q = r0 / r1;
            int64_t r2 = r0 - q * r1; r0 = r1; r1 = r2;
            int64_t t2 = t0 - q * t1; t0 = t1; t1 = t2;
        }
        inv = t0 % comps[l].modulus;
        if (inv < 0) inv += comps[l].modulus;
        basis[l] = (Ml % M) * inv % M;
    }
    if (check != M) throw std::invalid_argument("components do not cover the modulus");

    const int n = parts.empty() ? 0 : parts[0].rows();
    CompositeMat X(omega, n);
    for (size_t l = 0; l < comps.size(); ++l) {
        if (parts[l].rows() != n || parts[l].cols() != omega.m())
            throw std::invalid_argument("component matrix dimensions mismatch");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < omega.m(); ++j) {
                int64_t cur = X.at(i, j);
                int64_t add = static_cast<int64_t>(parts[l].rep(i, j)) * basis[l] % M;
                X.set(i, j, (cur + add) % M);
            }
    }
    return X;
}

// Composite rank in the sense of the channel decomposition: every projection
// has the same constant shape.
inline bool composite_rank_is(const CompositeMat& X,
                              const std::vector<CompositeComponent>& comps, int t) {
    for (const auto& comp : comps)
        if (shape_of(project(X, comp)) != Shape::constant(t, static_cast<int>(comp.s)))
            return false;
    return true;
}

}  // namespace chainring
