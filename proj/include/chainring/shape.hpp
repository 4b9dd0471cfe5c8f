// shape.hpp — the module-theoretic "rank" of finite chain ring modules:
// a non-decreasing s-tuple of non-negative integers, with the componentwise
// subshape partial order.

#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace chainring {

class Shape {
  public:
    Shape() = default;

    explicit Shape(std::vector<int> parts) : v_(std::move(parts)) {
        if (v_.empty()) throw std::invalid_argument("shape must have at least one component");
        int prev = 0;
        for (int x : v_) {
            if (x < 0) throw std::invalid_argument("shape components must be non-negative");
            if (x < prev) throw std::invalid_argument("shape components must be non-decreasing");
            prev = x;
        }
    }

    Shape(std::initializer_list<int> parts) : Shape(std::vector<int>(parts)) {}

    // The integer t embedded as the constant shape (t, ..., t).
    static Shape constant(int t, int s) {
        if (t < 0 || s < 1) throw std::invalid_argument("bad constant shape");
        return Shape(std::vector<int>(static_cast<size_t>(s), t));
    }

    static Shape zero(int s) { return constant(0, s); }

    int s() const { return static_cast<int>(v_.size()); }
    // mu_i with 1-based i; mu_0 = 0 by convention.
    int at(int i) const {
        if (i < 0 || i > s()) throw std::out_of_range("shape index");
        return i == 0 ? 0 : v_[static_cast<size_t>(i - 1)];
    }
    int operator[](int i) const { return at(i); }
    int last() const { return v_.back(); }
    int sum() const { return std::accumulate(v_.begin(), v_.end(), 0); }

    const std::vector<int>& parts() const { return v_; }

    bool is_constant(int t) const {
        return std::all_of(v_.begin(), v_.end(), [t](int x) { return x == t; });
    }

    bool subshape_of(const Shape& mu) const {
        check_len(mu);
        for (int i = 1; i <= s(); ++i)
            if (at(i) > mu.at(i)) return false;
        return true;
    }

    // kappa <= (t, ..., t)
    bool bounded_by(int t) const { return last() <= t; }

    Shape plus(const Shape& other) const {
        check_len(other);
        std::vector<int> r(v_);
        for (int i = 0; i < s(); ++i) r[static_cast<size_t>(i)] += other.v_[static_cast<size_t>(i)];
        return Shape(std::move(r));
    }

    Shape plus(int t) const { return plus(constant(t, s())); }

    Shape minus(int t) const {
        std::vector<int> r(v_);
        for (int& x : r) {
            x -= t;
            if (x < 0) throw std::invalid_argument("shape subtraction out of range");
        }
        return Shape(std::move(r));
    }

    Shape min_with(int cap) const {
        std::vector<int> r(v_);
        for (int& x : r) x = std::min(x, cap);
        return Shape(std::move(r));
    }

    friend bool operator==(const Shape& a, const Shape& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Shape& a, const Shape& b) { return !(a == b); }
    friend bool operator<(const Shape& a, const Shape& b) { return a.v_ < b.v_; }  // lexicographic

    // "1,2,3"
    std::string str() const {
        std::string out;
        for (int i = 0; i < s(); ++i) {
            if (i) out += ',';
            out += std::to_string(v_[static_cast<size_t>(i)]);
        }
        return out;
    }

  private:
    std::vector<int> v_;

    void check_len(const Shape& other) const {
        if (other.s() != s()) throw std::invalid_argument("shapes have different chain lengths");
    }
};

// Every subshape kappa with kappa <= mu and kappa <= (cap, ..., cap), in
// lexicographic order.
inline std::vector<Shape> subshapes(const Shape& mu, int cap) {
    std::vector<Shape> out;
    std::vector<int> cur(static_cast<size_t>(mu.s()), 0);
    auto rec = [&](auto&& self, int i) -> void {
        if (i > mu.s()) {
            out.emplace_back(cur);
            return;
        }
        int lo = i == 1 ? 0 : cur[static_cast<size_t>(i - 2)];
        int hi = std::min(mu.at(i), cap);
        for (int v = lo; v <= hi; ++v) {
            cur[static_cast<size_t>(i - 1)] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 1);
    return out;
}

}  // namespace chainring
