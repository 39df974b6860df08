#include "vass/numeric.hpp"

#include <algorithm>
#include <stdexcept>

namespace vass {

// ---------------------------------------------------------------- Nat

Nat::Nat(uint64_t v) {
    if (v != 0) {
        limbs_.push_back(static_cast<uint32_t>(v));
        if (uint32_t hi = static_cast<uint32_t>(v >> 32); hi != 0)
            limbs_.push_back(hi);
    }
}

void Nat::trim() {
    while (!limbs_.empty() && limbs_.back() == 0)
        limbs_.pop_back();
}

Nat Nat::from_string(std::string_view decimal) {
    if (decimal.empty())
        throw std::invalid_argument("empty numeral");
    Nat r;
    for (char c : decimal) {
        if (c < '0' || c > '9')
            throw std::invalid_argument("bad digit in numeral");
        r = r * Nat(10) + Nat(static_cast<uint64_t>(c - '0'));
    }
    return r;
}

uint64_t Nat::to_uint64() const {
    if (limbs_.size() > 2)
        throw std::overflow_error("Nat does not fit in 64 bits");
    uint64_t v = 0;
    if (limbs_.size() >= 1) v = limbs_[0];
    if (limbs_.size() == 2) v |= static_cast<uint64_t>(limbs_[1]) << 32;
    return v;
}

std::string Nat::to_string() const {
    if (is_zero())
        return "0";
    // Repeated division by 10^9.
    std::vector<uint32_t> work(limbs_);
    std::string out;
    while (!work.empty()) {
        uint64_t rem = 0;
        for (size_t i = work.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | work[i];
            work[i] = static_cast<uint32_t>(cur / 1000000000u);
            rem = cur % 1000000000u;
        }
        while (!work.empty() && work.back() == 0)
            work.pop_back();
        std::string chunk = std::to_string(rem);
        if (!work.empty())
            chunk.insert(0, 9 - chunk.size(), '0');
        out.insert(0, chunk);
    }
    return out;
}

Nat& Nat::operator+=(const Nat& o) {
    const size_t n = std::max(limbs_.size(), o.limbs_.size());
    limbs_.resize(n, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < n; ++i) {
        uint64_t s = carry + limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0);
        limbs_[i] = static_cast<uint32_t>(s);
        carry = s >> 32;
    }
    if (carry)
        limbs_.push_back(static_cast<uint32_t>(carry));
    return *this;
}

Nat Nat::operator+(const Nat& o) const {
    Nat r(*this);
    r += o;
    return r;
}

Nat Nat::operator*(const Nat& o) const {
    if (is_zero() || o.is_zero())
        return Nat();
    Nat r;
    r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
    for (size_t i = 0; i < limbs_.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < o.limbs_.size(); ++j) {
            uint64_t cur = r.limbs_[i + j] +
                           static_cast<uint64_t>(limbs_[i]) * o.limbs_[j] + carry;
            r.limbs_[i + j] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        size_t k = i + o.limbs_.size();
        while (carry) {
            uint64_t cur = r.limbs_[k] + carry;
            r.limbs_[k] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
            ++k;
        }
    }
    r.trim();
    return r;
}

std::optional<Nat> Nat::minus(const Nat& o) const {
    if (*this < o)
        return std::nullopt;
    Nat r(*this);
    int64_t borrow = 0;
    for (size_t i = 0; i < r.limbs_.size(); ++i) {
        int64_t cur = static_cast<int64_t>(r.limbs_[i]) - borrow -
                      (i < o.limbs_.size() ? static_cast<int64_t>(o.limbs_[i]) : 0);
        borrow = 0;
        if (cur < 0) {
            cur += (int64_t{1} << 32);
            borrow = 1;
        }
        r.limbs_[i] = static_cast<uint32_t>(cur);
    }
    r.trim();
    return r;
}

Nat Nat::monus(const Nat& o) const {
    auto d = minus(o);
    return d ? *d : Nat();
}

Nat Nat::pow(const Nat& base, uint64_t exponent) {
    Nat acc(1);
    Nat b(base);
    while (exponent) {
        if (exponent & 1)
            acc = acc * b;
        exponent >>= 1;
        if (exponent)
            b = b * b;
    }
    return acc;
}

std::strong_ordering Nat::operator<=>(const Nat& o) const {
    if (limbs_.size() != o.limbs_.size())
        return limbs_.size() <=> o.limbs_.size();
    for (size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != o.limbs_[i])
            return limbs_[i] <=> o.limbs_[i];
    }
    return std::strong_ordering::equal;
}

size_t Nat::hash() const {
    size_t h = 0x9e3779b97f4a7c15ull;
    for (uint32_t l : limbs_)
        h = hash_combine(h, l);
    return h;
}

// ---------------------------------------------------------------- Int

Int::Int(int64_t v) {
    if (v < 0) {
        neg_ = true;
        // Avoid overflow on INT64_MIN.
        mag_ = Nat(static_cast<uint64_t>(-(v + 1)) + 1);
    } else {
        mag_ = Nat(static_cast<uint64_t>(v));
    }
}

Int::Int(Nat magnitude, bool negative) : mag_(std::move(magnitude)), neg_(negative) {
    normalize();
}

void Int::normalize() {
    if (mag_.is_zero())
        neg_ = false;
}

Int Int::from_string(std::string_view s) {
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        bool neg = s[0] == '-';
        return Int(Nat::from_string(s.substr(1)), neg);
    }
    return Int(Nat::from_string(s), false);
}

std::string Int::to_string() const {
    return neg_ ? "-" + mag_.to_string() : mag_.to_string();
}

Int Int::operator+(const Int& o) const {
    if (neg_ == o.neg_)
        return Int(mag_ + o.mag_, neg_);
    if (auto d = mag_.minus(o.mag_))
        return Int(std::move(*d), neg_);
    return Int(*o.mag_.minus(mag_), o.neg_);
}

Int Int::operator-() const {
    return Int(mag_, !neg_);
}

std::strong_ordering Int::operator<=>(const Int& o) const {
    if (neg_ != o.neg_)
        return neg_ ? std::strong_ordering::less : std::strong_ordering::greater;
    auto cmp = mag_ <=> o.mag_;
    return neg_ ? (0 <=> cmp) : cmp;
}

// ---------------------------------------------------------------- NatOmega

NatOmega NatOmega::omega() {
    NatOmega x;
    x.omega_ = true;
    return x;
}

const Nat& NatOmega::value() const {
    if (omega_)
        throw std::logic_error("value() on omega");
    return value_;
}

std::string NatOmega::to_string() const {
    return omega_ ? "w" : value_.to_string();
}

std::strong_ordering NatOmega::operator<=>(const NatOmega& o) const {
    if (omega_ != o.omega_)
        return omega_ ? std::strong_ordering::greater : std::strong_ordering::less;
    if (omega_)
        return std::strong_ordering::equal;
    return value_ <=> o.value_;
}

size_t NatOmega::hash() const {
    return omega_ ? 0x517cc1b727220a95ull : value_.hash();
}

// ---------------------------------------------------------------- helpers

std::optional<Nat> add_effect(const Nat& c, const Int& e) {
    if (e.is_negative())
        return c.minus(e.magnitude());
    return c + e.magnitude();
}

std::optional<NatOmega> add_effect(const NatOmega& c, const Int& e) {
    if (c.is_omega())
        return c;
    auto v = add_effect(c.value(), e);
    if (!v)
        return std::nullopt;
    return NatOmega(std::move(*v));
}

size_t hash_combine(size_t seed, size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

size_t hash_nat_vec(const NatVec& v) {
    size_t h = 0xc2b2ae3d27d4eb4full;
    for (const Nat& x : v)
        h = hash_combine(h, x.hash());
    return h;
}

size_t hash_omega_vec(const OmegaVec& v) {
    size_t h = 0x165667b19e3779f9ull;
    for (const NatOmega& x : v)
        h = hash_combine(h, x.hash());
    return h;
}

} // namespace vass
