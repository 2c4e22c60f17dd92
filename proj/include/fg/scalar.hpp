#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>

#include <gmpxx.h>

namespace fg {

/// Exact rational number with an inline 64-bit fast path.
///
/// A value is held as a machine integer whenever it is an integer that fits
/// in `int64_t`; otherwise it is held as a reduced GMP rational. The
/// representation is canonical, so equality is structural. Ring-specific
/// reduction (residues mod n) is applied by `Ring`, not here.
class Scalar {
public:
    Scalar() noexcept = default;
    Scalar(std::int64_t v) noexcept : small_(v) {}
    Scalar(int v) noexcept : small_(v) {}
    explicit Scalar(const mpz_class& v);
    explicit Scalar(const mpq_class& v);

    Scalar(const Scalar& other);
    Scalar(Scalar&&) noexcept = default;
    Scalar& operator=(const Scalar& other);
    Scalar& operator=(Scalar&&) noexcept = default;
    ~Scalar() = default;

    bool is_zero() const noexcept { return !big_ && small_ == 0; }
    bool is_one() const noexcept { return !big_ && small_ == 1; }
    bool is_small() const noexcept { return !big_; }
    bool is_integer() const;
    std::int64_t small_value() const noexcept { return small_; }

    mpq_class to_mpq() const;
    /// Numerator and denominator of the reduced fraction (denominator > 0).
    mpz_class numerator() const;
    mpz_class denominator() const;

    int sign() const;
    Scalar abs() const;

    /// Decimal for integers, "a/b" otherwise.
    std::string to_string() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a);
    /// Exact rational quotient; `b` must be nonzero.
    friend Scalar operator/(const Scalar& a, const Scalar& b);

    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

private:
    void normalize();

    std::int64_t small_ = 0;
    std::unique_ptr<mpq_class> big_;
};

} // namespace fg
