#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vass {

/// Arbitrary-precision natural number. Counter values, atom constants and
/// threshold formulas all use this type; fixed-width integers overflow on
/// the threshold formulas immediately.
class Nat {
public:
    Nat() = default;
    Nat(uint64_t v);

    static Nat from_string(std::string_view decimal);

    bool is_zero() const { return limbs_.empty(); }
    /// Throws std::overflow_error if the value does not fit.
    uint64_t to_uint64() const;
    bool fits_uint64() const { return limbs_.size() <= 2; }
    std::string to_string() const;

    Nat& operator+=(const Nat& o);
    Nat operator+(const Nat& o) const;
    Nat operator*(const Nat& o) const;
    /// a - b, or nullopt when b > a.
    std::optional<Nat> minus(const Nat& o) const;
    /// max(a - b, 0).
    Nat monus(const Nat& o) const;
    Nat pred() const { return monus(Nat(1)); } // max(a-1, 0)
    Nat succ() const { return *this + Nat(1); }

    static Nat pow(const Nat& base, uint64_t exponent);

    std::strong_ordering operator<=>(const Nat& o) const;
    bool operator==(const Nat& o) const = default;

    size_t hash() const;

private:
    // Base 2^32 limbs, little-endian, no trailing zero limbs (zero = empty).
    std::vector<uint32_t> limbs_;
    void trim();
};

/// Signed counterpart of Nat; transition effects live here.
class Int {
public:
    Int() = default;
    Int(int64_t v);
    Int(Nat magnitude, bool negative);

    static Int from_string(std::string_view decimal);

    bool is_zero() const { return mag_.is_zero(); }
    bool is_negative() const { return neg_; }
    const Nat& magnitude() const { return mag_; }
    std::string to_string() const;

    Int operator+(const Int& o) const;
    Int operator-() const;

    std::strong_ordering operator<=>(const Int& o) const;
    bool operator==(const Int& o) const = default;

private:
    Nat mag_;
    bool neg_ = false; // canonical: zero is never negative
    void normalize();
};

/// Natural extended with omega; omega dominates every natural and absorbs
/// addition.
class NatOmega {
public:
    NatOmega() = default;
    NatOmega(Nat v) : value_(std::move(v)) {}
    static NatOmega omega();

    bool is_omega() const { return omega_; }
    /// Finite value; must not be called on omega.
    const Nat& value() const;
    std::string to_string() const; // "w" for omega

    std::strong_ordering operator<=>(const NatOmega& o) const;
    bool operator==(const NatOmega& o) const = default;

    size_t hash() const;

private:
    Nat value_;
    bool omega_ = false;
};

/// c + e over naturals; nullopt when the result would be negative.
std::optional<Nat> add_effect(const Nat& c, const Int& e);
/// Same over Nat+omega; omega absorbs any effect.
std::optional<NatOmega> add_effect(const NatOmega& c, const Int& e);

using NatVec = std::vector<Nat>;
using OmegaVec = std::vector<NatOmega>;
using EffVec = std::vector<Int>;

size_t hash_combine(size_t seed, size_t v);
size_t hash_nat_vec(const NatVec& v);
size_t hash_omega_vec(const OmegaVec& v);

} // namespace vass
