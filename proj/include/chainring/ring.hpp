// ring.hpp — exact arithmetic in finite chain rings.
//
// Two concrete families are provided:
//   * integers modulo p^s (uniformizer pi = p), and
//   * F_q[x]/<x^s> for a prime power q (uniformizer pi = x).
//
// In both families an element's canonical representative is the base-q packed
// vector of its pi-adic digits, an integer in [0, q^s).  Degree, digit
// extraction, residue sets and pi-shifts are therefore family-independent;
// only addition, multiplication and unit inversion differ.

#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chainring {

namespace detail {

inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Factors q as p^r with p prime; throws if q is not a prime power.
inline void factor_prime_power(uint64_t q, uint64_t& p, unsigned& r) {
    if (q < 2) throw std::invalid_argument("prime power must be >= 2");
    uint64_t base = q;
    for (uint64_t d = 2; d * d <= base; ++d) {
        if (base % d == 0) { base = d; break; }
    }
    // base is now the smallest prime factor of q
    p = base;
    r = 0;
    uint64_t x = q;
    while (x % p == 0) { x /= p; ++r; }
    if (x != 1) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
}

// The field F_q, q = p^r <= 2^16.  Elements are integers in [0, q) encoding
// base-p coefficient vectors of polynomials over F_p.  Multiplication runs on
// exp/log tables built from a primitive element.
class SmallField {
  public:
    explicit SmallField(uint64_t q) {
        factor_prime_power(q, p_, r_);
        if (q > (1u << 16)) throw std::invalid_argument("field size must be <= 2^16");
        q_ = static_cast<uint32_t>(q);
        if (r_ > 1) find_modulus();
        build_tables();
    }

    uint32_t p() const { return static_cast<uint32_t>(p_); }
    uint32_t q() const { return q_; }

    uint32_t add(uint32_t a, uint32_t b) const {
        if (r_ == 1) return (a + b) % q_;
        uint32_t res = 0, w = 1;
        const auto p = static_cast<uint32_t>(p_);
        while (a || b) {
            res += ((a + b) % p) * w;
            a /= p;
            b /= p;
            w *= p;
        }
        return res;
    }

    uint32_t neg(uint32_t a) const {
        if (r_ == 1) return a ? q_ - a : 0;
        uint32_t res = 0, w = 1;
        const auto p = static_cast<uint32_t>(p_);
        while (a) {
            uint32_t d = a % p;
            res += (d ? p - d : 0) * w;
            a /= p;
            w *= p;
        }
        return res;
    }

    uint32_t mul(uint32_t a, uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (q_ - 1)];
    }

    uint32_t inv(uint32_t a) const {
        if (a == 0) throw std::domain_error("field inverse of zero");
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }

  private:
    uint64_t p_ = 0;
    unsigned r_ = 0;
    uint32_t q_ = 0;
    std::vector<uint32_t> modulus_;        // monic irreducible of degree r (coeffs, low first)
    std::vector<uint16_t> exp_;            // exp_[i] = g^i, i in [0, q-1)
    std::vector<uint16_t> log_;            // log_[a] for a != 0

    std::vector<uint32_t> unpack(uint32_t a) const {
        std::vector<uint32_t> c(r_, 0);
        for (unsigned i = 0; i < r_; ++i) { c[i] = a % p_; a /= static_cast<uint32_t>(p_); }
        return c;
    }

    // Multiplies two field elements by raw polynomial arithmetic; used only
    // while building the tables.
    uint32_t raw_mul(uint32_t a, uint32_t b) const {
        if (r_ == 1) return static_cast<uint32_t>((uint64_t(a) * b) % p_);
        auto ca = unpack(a), cb = unpack(b);
        std::vector<uint32_t> prod(2 * r_ - 1, 0);
        for (unsigned i = 0; i < r_; ++i)
            for (unsigned j = 0; j < r_; ++j)
                prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
        // reduce modulo the irreducible (monic, degree r_)
        for (unsigned d = 2 * r_ - 2; d >= r_; --d) {
            uint32_t lead = prod[d];
            if (lead) {
                prod[d] = 0;
                for (unsigned i = 0; i < r_; ++i) {
                    uint32_t sub = (lead * modulus_[i]) % p_;
                    prod[d - r_ + i] = (prod[d - r_ + i] + p_ - sub) % p_;
                }
            }
            if (d == r_) break;
        }
        uint32_t res = 0, w = 1;
        for (unsigned i = 0; i < r_; ++i) { res += prod[i] * w; w *= static_cast<uint32_t>(p_); }
        return res;
    }

    // Tests divisibility of the monic polynomial `poly` (degree r_) by the
    // monic polynomial `div` (degree d) over F_p.
    static bool divides(const std::vector<uint32_t>& div, std::vector<uint32_t> poly, uint64_t p) {
        const size_t d = div.size() - 1;
        for (size_t top = poly.size() - 1; top >= d; --top) {
            uint32_t lead = poly[top];
            if (lead) {
                // div is monic, so the quotient digit is `lead`
                for (size_t i = 0; i <= d; ++i) {
                    uint64_t sub = (uint64_t(lead) * div[i]) % p;
                    poly[top - d + i] = static_cast<uint32_t>((poly[top - d + i] + p - sub) % p);
                }
            }
            if (top == d) break;
        }
        for (size_t i = 0; i < d; ++i)
            if (poly[i]) return false;
        return true;
    }

    void find_modulus() {
        // search monic degree-r polynomials for an irreducible one
        const uint64_t count = [&] {
            uint64_t c = 1;
            for (unsigned i = 0; i < r_; ++i) c *= p_;
            return c;
        }();
        for (uint64_t idx = 1; idx < count; ++idx) {
            std::vector<uint32_t> cand(r_ + 1, 0);
            uint64_t x = idx;
            for (unsigned i = 0; i < r_; ++i) { cand[i] = static_cast<uint32_t>(x % p_); x /= p_; }
            cand[r_] = 1;
            bool irreducible = true;
            // trial division by all monic polynomials of degree 1..r/2
            for (unsigned d = 1; irreducible && 2 * d <= r_; ++d) {
                uint64_t dcount = 1;
                for (unsigned i = 0; i < d; ++i) dcount *= p_;
                for (uint64_t j = 0; j < dcount && irreducible; ++j) {
                    std::vector<uint32_t> div(d + 1, 0);
                    uint64_t y = j;
                    for (unsigned i = 0; i < d; ++i) { div[i] = static_cast<uint32_t>(y % p_); y /= p_; }
                    div[d] = 1;
                    if (divides(div, cand, p_)) irreducible = false;
                }
            }
            if (irreducible) { modulus_ = cand; return; }
        }
        throw std::logic_error("no irreducible polynomial found");  // unreachable
    }

    void build_tables() {
        exp_.assign(q_ - 1, 0);
        log_.assign(q_, 0);
        for (uint32_t g = 1; g < q_; ++g) {
            uint32_t x = 1;
            uint32_t order = 0;
            do {
                x = raw_mul(x, g);
                ++order;
            } while (x != 1);
            if (order == q_ - 1) {
                x = 1;
                for (uint32_t i = 0; i < q_ - 1; ++i) {
                    exp_[i] = static_cast<uint16_t>(x);
                    log_[x] = static_cast<uint16_t>(i);
                    x = raw_mul(x, g);
                }
                return;
            }
        }
        throw std::logic_error("no field generator found");  // unreachable
    }
};

}  // namespace detail

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

// A concrete (q, s) finite chain ring with a fixed uniformizer and residue
// set.  Immutable after construction and freely shareable across threads.
class Ring : public std::enable_shared_from_this<Ring> {
  public:
    enum class Family { IntegersModPrimePower, PolyQuotient };

    // The ring Z_{p^s}.  p must be prime, s >= 1, and p^s < 2^32.
    static RingPtr integers_mod(uint64_t p, unsigned s) {
        return RingPtr(new Ring(Family::IntegersModPrimePower, p, s));
    }

    // The ring F_q[x]/<x^s>.  q must be a prime power <= 2^16, s >= 1,
    // and q^s < 2^32.
    static RingPtr poly_quotient(uint64_t q, unsigned s) {
        return RingPtr(new Ring(Family::PolyQuotient, q, s));
    }

    // Parses ring notation: "Z8", "Z2^3" (both Z_8), "F2x3" (F_2[x]/<x^3>).
    static RingPtr parse(std::string_view name);

    Family family() const { return family_; }
    uint64_t q() const { return q_; }          // residue field size
    unsigned s() const { return s_; }          // chain length
    uint64_t size() const { return size_; }    // q^s
    uint64_t unit_count() const { return size_ - size_ / q_; }

    bool same(const Ring& other) const {
        return family_ == other.family_ && q_ == other.q_ && s_ == other.s_;
    }

    // --- arithmetic on canonical representatives -------------------------

    uint64_t add(uint64_t a, uint64_t b) const {
        check_rep(a); check_rep(b);
        if (family_ == Family::IntegersModPrimePower) return (a + b) % size_;
        uint64_t res = 0, w = 1;
        for (unsigned i = 0; i < s_; ++i) {
            res += uint64_t(field_->add(static_cast<uint32_t>(a % q_), static_cast<uint32_t>(b % q_))) * w;
            a /= q_; b /= q_; w *= q_;
        }
        return res;
    }

    uint64_t neg(uint64_t a) const {
        check_rep(a);
        if (family_ == Family::IntegersModPrimePower) return a ? size_ - a : 0;
        uint64_t res = 0, w = 1;
        for (unsigned i = 0; i < s_; ++i) {
            res += uint64_t(field_->neg(static_cast<uint32_t>(a % q_))) * w;
            a /= q_; w *= q_;
        }
        return res;
    }

    uint64_t sub(uint64_t a, uint64_t b) const { return add(a, neg(b)); }

    uint64_t mul(uint64_t a, uint64_t b) const {
        check_rep(a); check_rep(b);
        if (family_ == Family::IntegersModPrimePower) return (a * b) % size_;
        // truncated convolution of base-q digit vectors over F_q
        uint32_t da[64], db[64];
        for (unsigned i = 0; i < s_; ++i) { da[i] = static_cast<uint32_t>(a % q_); a /= q_; }
        for (unsigned i = 0; i < s_; ++i) { db[i] = static_cast<uint32_t>(b % q_); b /= q_; }
        uint64_t res = 0, w = 1;
        for (unsigned k = 0; k < s_; ++k) {
            uint32_t c = 0;
            for (unsigned i = 0; i <= k; ++i) c = field_->add(c, field_->mul(da[i], db[k - i]));
            res += uint64_t(c) * w;
            w *= q_;
        }
        return res;
    }

    // Least index of a nonzero pi-adic digit; degree of 0 is s.
    unsigned degree(uint64_t a) const {
        check_rep(a);
        if (a == 0) return s_;
        unsigned d = 0;
        while (a % q_ == 0) { a /= q_; ++d; }
        return d;
    }

    bool is_unit(uint64_t a) const { check_rep(a); return a % q_ != 0; }

    uint64_t unit_inverse(uint64_t a) const {
        check_rep(a);
        if (!is_unit(a)) throw std::domain_error("unit_inverse: element of degree > 0");
        if (family_ == Family::IntegersModPrimePower) {
            // extended Euclid on (a, p^s)
            int64_t r0 = static_cast<int64_t>(size_), r1 = static_cast<int64_t>(a);
            int64_t t0 = 0, t1 = 1;
            while (r1 != 0) {
                int64_t qq = r0 / r1;
                int64_t r2 = r0 - qq * r1; r0 = r1; r1 = r2;
                int64_t t2 = t0 - qq * t1; t0 = t1; t1 = t2;
            }
            int64_t inv = t0 % static_cast<int64_t>(size_);
            if (inv < 0) inv += static_cast<int64_t>(size_);
            return static_cast<uint64_t>(inv);
        }
        // power-series inversion: b_0 = a_0^{-1}, b_k = -a_0^{-1} sum a_i b_{k-i}
        uint32_t da[64], db[64];
        uint64_t x = a;
        for (unsigned i = 0; i < s_; ++i) { da[i] = static_cast<uint32_t>(x % q_); x /= q_; }
        uint32_t inv0 = field_->inv(da[0]);
        db[0] = inv0;
        for (unsigned k = 1; k < s_; ++k) {
            uint32_t acc = 0;
            for (unsigned i = 1; i <= k; ++i) acc = field_->add(acc, field_->mul(da[i], db[k - i]));
            db[k] = field_->mul(inv0, field_->neg(acc));
        }
        uint64_t res = 0, w = 1;
        for (unsigned i = 0; i < s_; ++i) { res += uint64_t(db[i]) * w; w *= q_; }
        return res;
    }

    // --- pi-adic structure ------------------------------------------------

    uint64_t pi() const { return s_ == 1 ? 0 : q_ % size_; }

    uint64_t pi_pow(unsigned l) const {
        if (l >= s_) return 0;
        uint64_t r = 1;
        for (unsigned i = 0; i < l; ++i) r *= q_;
        return r;
    }

    // The s pi-adic digits of a, each the representative of a residue-set
    // element (an integer in [0, q)).
    std::vector<uint64_t> pi_adic(uint64_t a) const {
        check_rep(a);
        std::vector<uint64_t> d(s_);
        for (unsigned i = 0; i < s_; ++i) { d[i] = a % q_; a /= q_; }
        return d;
    }

    uint64_t from_pi_adic(const std::vector<uint64_t>& digits) const {
        if (digits.size() != s_) throw std::invalid_argument("pi-adic vector must have s digits");
        uint64_t res = 0, w = 1;
        for (unsigned i = 0; i < s_; ++i) {
            if (digits[i] >= q_) throw std::invalid_argument("pi-adic digit out of range");
            res += digits[i] * w;
            w *= q_;
        }
        return res;
    }

    // R(R, pi^l) = { sum_{i<l} a_i pi^i }: exactly the representatives < q^l.
    std::vector<uint64_t> residue_set(unsigned l) const {
        if (l > s_) throw std::invalid_argument("residue_set: l > s");
        std::vector<uint64_t> r(residue_count(l));
        for (uint64_t i = 0; i < r.size(); ++i) r[i] = i;
        return r;
    }

    uint64_t residue_count(unsigned l) const {
        uint64_t c = 1;
        for (unsigned i = 0; i < l; ++i) c *= q_;
        return c;
    }

    bool in_residue_set(uint64_t a, unsigned l) const { check_rep(a); return a < residue_count(l); }

    // Truncation to the first l pi-adic digits (the residue of a mod pi^l).
    uint64_t reduce_mod_pi_pow(uint64_t a, unsigned l) const {
        check_rep(a);
        return l >= s_ ? a : a % residue_count(l);
    }

    // Digit shift: a = pi^l * shift + (a mod pi^l); returns `shift`.
    uint64_t pi_shift_right(uint64_t a, unsigned l) const {
        check_rep(a);
        return l >= s_ ? 0 : a / residue_count(l);
    }

    // --- text notation ----------------------------------------------------

    // "Z8" / "F2x3"
    std::string name() const {
        if (family_ == Family::IntegersModPrimePower) return "Z" + std::to_string(size_);
        return "F" + std::to_string(q_) + "x" + std::to_string(s_);
    }

    std::string elem_to_string(uint64_t a) const;
    uint64_t elem_from_string(std::string_view text) const;

  private:
    Family family_;
    uint64_t q_;
    unsigned s_;
    uint64_t size_;
    std::shared_ptr<const detail::SmallField> field_;  // PolyQuotient only

    Ring(Family family, uint64_t q, unsigned s) : family_(family), q_(q), s_(s) {
        if (s < 1) throw std::invalid_argument("chain length s must be >= 1");
        if (family == Family::IntegersModPrimePower) {
            if (!detail::is_prime_u64(q)) throw std::invalid_argument("p must be prime");
        } else {
            field_ = std::make_shared<detail::SmallField>(q);
        }
        size_ = 1;
        for (unsigned i = 0; i < s; ++i) {
            if (size_ > (uint64_t(1) << 32) / q) throw std::invalid_argument("ring size must be < 2^32");
            size_ *= q;
        }
    }

    void check_rep(uint64_t a) const {
        if (a >= size_) throw std::invalid_argument("element representative out of range");
    }

    static char digit_char(uint64_t d) {
        return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + (d - 10));
    }
    static uint64_t digit_value(char c) {
        if (c >= '0' && c <= '9') return static_cast<uint64_t>(c - '0');
        if (c >= 'a' && c <= 'z') return static_cast<uint64_t>(c - 'a' + 10);
        throw std::invalid_argument(std::string("bad element digit '") + c + "'");
    }
};

inline std::string Ring::elem_to_string(uint64_t a) const {
    check_rep(a);
    if (family_ == Family::IntegersModPrimePower) return std::to_string(a);
    if (q_ > 36) throw std::invalid_argument("text notation supports q <= 36");
    std::string out(s_, '0');
    for (unsigned i = 0; i < s_; ++i) { out[i] = digit_char(a % q_); a /= q_; }
    return out;
}

inline uint64_t Ring::elem_from_string(std::string_view text) const {
    if (text.empty()) throw std::invalid_argument("empty element token");
    if (family_ == Family::IntegersModPrimePower) {
        uint64_t v = 0;
        for (char c : text) {
            if (c < '0' || c > '9') throw std::invalid_argument("bad integer token '" + std::string(text) + "'");
            v = v * 10 + static_cast<uint64_t>(c - '0');
            if (v >= size_) throw std::invalid_argument("element token '" + std::string(text) + "' out of range");
        }
        return v;
    }
    if (text.size() > s_) throw std::invalid_argument("element token '" + std::string(text) + "' too long");
    uint64_t res = 0, w = 1;
    for (char c : text) {
        uint64_t d = digit_value(c);
        if (d >= q_) throw std::invalid_argument("element digit out of range in '" + std::string(text) + "'");
        res += d * w;
        w *= q_;
    }
    return res;
}

inline RingPtr Ring::parse(std::string_view name) {
    auto fail = [&] { throw std::invalid_argument("bad ring notation '" + std::string(name) + "'"); };
    if (name.size() < 2) fail();
    auto read_uint = [&](size_t& pos) {
        uint64_t v = 0;
        size_t start = pos;
        while (pos < name.size() && name[pos] >= '0' && name[pos] <= '9') {
            v = v * 10 + static_cast<uint64_t>(name[pos] - '0');
            ++pos;
        }
        if (pos == start) fail();
        return v;
    };
    size_t pos = 1;
    if (name[0] == 'Z') {
        uint64_t base = read_uint(pos);
        if (pos < name.size() && name[pos] == '^') {
            ++pos;
            uint64_t exp = read_uint(pos);
            if (pos != name.size() || exp == 0) fail();
            return integers_mod(base, static_cast<unsigned>(exp));
        }
        if (pos != name.size()) fail();
        uint64_t p;
        unsigned s;
        detail::factor_prime_power(base, p, s);
        return integers_mod(p, s);
    }
    if (name[0] == 'F') {
        uint64_t q = read_uint(pos);
        if (pos >= name.size() || name[pos] != 'x') fail();
        ++pos;
        uint64_t s = read_uint(pos);
        if (pos != name.size() || s == 0) fail();
        return poly_quotient(q, static_cast<unsigned>(s));
    }
    fail();
    return nullptr;  // unreachable
}

// A ring element tagged with its owning ring.  Operations between elements of
// different rings are rejected.
class Elem {
  public:
    Elem() : ring_(nullptr), rep_(0) {}
    Elem(RingPtr ring, uint64_t rep) : ring_(std::move(ring)), rep_(rep) {
        if (!ring_) throw std::invalid_argument("null ring");
        if (rep_ >= ring_->size()) throw std::invalid_argument("element representative out of range");
    }

    uint64_t rep() const { return rep_; }
    const RingPtr& ring() const { return ring_; }
    unsigned degree() const { return ring_->degree(rep_); }
    bool is_unit() const { return ring_->is_unit(rep_); }
    Elem inverse() const { return Elem(ring_, ring_->unit_inverse(rep_)); }
    std::string str() const { return ring_->elem_to_string(rep_); }

    friend Elem operator+(const Elem& a, const Elem& b) {
        check_same(a, b);
        return Elem(a.ring_, a.ring_->add(a.rep_, b.rep_));
    }
    friend Elem operator-(const Elem& a, const Elem& b) {
        check_same(a, b);
        return Elem(a.ring_, a.ring_->sub(a.rep_, b.rep_));
    }
    friend Elem operator*(const Elem& a, const Elem& b) {
        check_same(a, b);
        return Elem(a.ring_, a.ring_->mul(a.rep_, b.rep_));
    }
    Elem operator-() const { return Elem(ring_, ring_->neg(rep_)); }

    friend bool operator==(const Elem& a, const Elem& b) {
        check_same(a, b);
        return a.rep_ == b.rep_;
    }

  private:
    RingPtr ring_;
    uint64_t rep_;

    static void check_same(const Elem& a, const Elem& b) {
        if (!a.ring_ || !b.ring_ || !a.ring_->same(*b.ring_))
            throw std::invalid_argument("mixed-ring operands");
    }
};

}  // namespace chainring
