#include "fg/scalar.hpp"

#include <stdexcept>

#include "fg/error.hpp"

namespace fg {

namespace {

bool fits_small(const mpz_class& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; }

} // namespace

Scalar::Scalar(const mpz_class& v) {
    if (fits_small(v)) {
        small_ = v.get_si();
    } else {
        big_ = std::make_unique<mpq_class>(v);
    }
}

Scalar::Scalar(const mpq_class& v) {
    big_ = std::make_unique<mpq_class>(v);
    big_->canonicalize();
    normalize();
}

Scalar::Scalar(const Scalar& other) : small_(other.small_) {
    if (other.big_) big_ = std::make_unique<mpq_class>(*other.big_);
}

Scalar& Scalar::operator=(const Scalar& other) {
    if (this == &other) return *this;
    small_ = other.small_;
    if (other.big_) {
        if (big_) *big_ = *other.big_;
        else big_ = std::make_unique<mpq_class>(*other.big_);
    } else {
        big_.reset();
    }
    return *this;
}

void Scalar::normalize() {
    if (!big_) return;
    if (big_->get_den() == 1 && fits_small(big_->get_num())) {
        small_ = big_->get_num().get_si();
        big_.reset();
    } else {
        small_ = 0;
    }
}

bool Scalar::is_integer() const { return !big_ || big_->get_den() == 1; }

mpq_class Scalar::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(small_)));
}

mpz_class Scalar::numerator() const {
    if (big_) return big_->get_num();
    return mpz_class(static_cast<long>(small_));
}

mpz_class Scalar::denominator() const {
    if (big_) return big_->get_den();
    return mpz_class(1);
}

int Scalar::sign() const {
    if (big_) return sgn(*big_);
    return (small_ > 0) - (small_ < 0);
}

Scalar Scalar::abs() const { return sign() < 0 ? -*this : *this; }

std::string Scalar::to_string() const {
    if (!big_) return std::to_string(small_);
    if (big_->get_den() == 1) return big_->get_num().get_str();
    return big_->get_num().get_str() + "/" + big_->get_den().get_str();
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (!a.big_ && !b.big_) {
        std::int64_t r;
        if (!__builtin_add_overflow(a.small_, b.small_, &r)) return Scalar(r);
    }
    return Scalar(mpq_class(a.to_mpq() + b.to_mpq()));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    if (!a.big_ && !b.big_) {
        std::int64_t r;
        if (!__builtin_sub_overflow(a.small_, b.small_, &r)) return Scalar(r);
    }
    return Scalar(mpq_class(a.to_mpq() - b.to_mpq()));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (!a.big_ && !b.big_) {
        std::int64_t r;
        if (!__builtin_mul_overflow(a.small_, b.small_, &r)) return Scalar(r);
    }
    return Scalar(mpq_class(a.to_mpq() * b.to_mpq()));
}

Scalar operator-(const Scalar& a) {
    if (!a.big_ && a.small_ != INT64_MIN) return Scalar(-a.small_);
    return Scalar(mpq_class(-a.to_mpq()));
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) fail(Errc::invalid_argument, "division by zero");
    if (!a.big_ && !b.big_ && b.small_ != 0 && a.small_ % b.small_ == 0 &&
        !(a.small_ == INT64_MIN && b.small_ == -1)) {
        return Scalar(a.small_ / b.small_);
    }
    return Scalar(mpq_class(a.to_mpq() / b.to_mpq()));
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (!a.big_ && !b.big_) return a.small_ == b.small_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

} // namespace fg
