#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "fg/scalar.hpp"

namespace fg {

enum class RingKind { integers, integers_mod, rationals };

/// Descriptor of an exact commutative coefficient ring: Z, Z/n (n >= 2) or Q.
///
/// Raw values are `Scalar`s in canonical form for the ring: integers for Z,
/// residues in [0, n) for Z/n, reduced fractions for Q. Series and other
/// containers store raw values together with a single descriptor; the
/// arithmetic member functions below take canonical inputs and return
/// canonical outputs.
class Ring {
public:
    static Ring integers();
    static Ring rationals();
    static Ring integers_mod(const mpz_class& n);
    static Ring integers_mod(std::int64_t n) { return integers_mod(mpz_class(static_cast<long>(n))); }

    /// "z", "q" or "zmod:<n>".
    static Ring parse(std::string_view text);
    std::string to_string() const;

    RingKind kind() const noexcept { return kind_; }
    /// Zero unless kind() == integers_mod.
    const mpz_class& modulus() const noexcept { return modulus_; }
    bool is_finite() const noexcept { return kind_ == RingKind::integers_mod; }

    /// The prime p when the additive order of 1 is prime; empty otherwise.
    std::optional<mpz_class> characteristic_prime() const;

    /// Number of elements of a finite ring.
    const mpz_class& order() const;

    /// 0, 1, ..., n-1 for Z/n; throws `not_enumerable` for infinite rings.
    std::vector<Scalar> enumerate() const;

    Scalar zero() const { return Scalar(); }
    Scalar one() const { return Scalar(1); }
    Scalar from_integer(std::int64_t v) const { return reduce(Scalar(v)); }
    Scalar from_integer(const mpz_class& v) const { return reduce(Scalar(v)); }

    /// Canonical image of an integer (or, over Q, of a rational).
    /// Throws `invalid_argument` when a non-integer is mapped into Z or Z/n.
    Scalar reduce(const Scalar& v) const;
    bool is_canonical(const Scalar& v) const;

    Scalar add(const Scalar& a, const Scalar& b) const { return reduce_fast(a + b); }
    Scalar sub(const Scalar& a, const Scalar& b) const { return reduce_fast(a - b); }
    Scalar mul(const Scalar& a, const Scalar& b) const { return reduce_fast(a * b); }
    Scalar neg(const Scalar& a) const { return reduce_fast(-a); }

    std::optional<Scalar> try_invert(const Scalar& a) const;
    /// The unique b with m*b = a, if it exists. Over Z/n this requires
    /// gcd(m, n) = 1. Throws `invalid_argument` for m = 0.
    std::optional<Scalar> divide_by_integer(const Scalar& a, const mpz_class& m) const;

    /// Element parsed from a decimal integer or "a/b" (Q only), reduced.
    Scalar parse_value(std::string_view text) const;

    friend bool operator==(const Ring& a, const Ring& b) {
        return a.kind_ == b.kind_ && a.modulus_ == b.modulus_;
    }

private:
    Ring(RingKind kind, mpz_class modulus);
    Scalar reduce_fast(const Scalar& v) const;

    RingKind kind_;
    mpz_class modulus_;
    std::int64_t small_modulus_ = 0; // modulus when it is at most 2^31
};

/// An element of a specific ring. Arithmetic between elements of different
/// rings throws `descriptor_mismatch`.
class RingElement {
public:
    RingElement(Ring ring, Scalar value);
    static RingElement parse(const Ring& ring, std::string_view text);

    const Ring& ring() const noexcept { return ring_; }
    const Scalar& value() const noexcept { return value_; }
    bool is_zero() const noexcept { return value_.is_zero(); }

    std::optional<RingElement> try_invert() const;
    std::optional<RingElement> divide_by_integer(const mpz_class& m) const;
    std::string to_string() const { return value_.to_string(); }

    friend RingElement operator+(const RingElement& a, const RingElement& b);
    friend RingElement operator-(const RingElement& a, const RingElement& b);
    friend RingElement operator*(const RingElement& a, const RingElement& b);
    friend RingElement operator-(const RingElement& a);

    friend bool operator==(const RingElement& a, const RingElement& b) {
        return a.ring_ == b.ring_ && a.value_ == b.value_;
    }

private:
    Ring ring_;
    Scalar value_;
};

} // namespace fg
