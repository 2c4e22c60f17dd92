#include "fg/ring.hpp"

#include <algorithm>
#include <cctype>

#include "fg/error.hpp"

namespace fg {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::descriptor_mismatch: return "descriptor-mismatch";
    case Errc::shape_mismatch: return "shape-mismatch";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::not_enumerable: return "not-enumerable";
    case Errc::not_invertible: return "not-invertible";
    case Errc::not_divisible: return "not-divisible";
    case Errc::axiom_violation: return "axiom-violation";
    case Errc::bud_mismatch: return "bud-mismatch";
    case Errc::wrong_ring: return "wrong-ring";
    case Errc::invalid_fgl: return "invalid-fgl";
    case Errc::needs_q_algebra: return "needs-Q-algebra";
    case Errc::too_large: return "too-large";
    case Errc::internal_consistency: return "internal-consistency";
    case Errc::not_a_complex: return "not-a-complex";
    case Errc::insufficient_truncation: return "insufficient-truncation";
    case Errc::parse_error: return "parse-error";
    }
    return "unknown";
}

namespace {

bool parse_decimal(std::string_view text, mpz_class& out) {
    if (text.empty()) return false;
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) return false;
    if (!std::all_of(text.begin() + start, text.end(), [](unsigned char c) { return std::isdigit(c); }))
        return false;
    std::string s(text[0] == '+' ? text.substr(1) : text);
    return out.set_str(s, 10) == 0;
}

} // namespace

Ring::Ring(RingKind kind, mpz_class modulus) : kind_(kind), modulus_(std::move(modulus)) {
    if (kind_ == RingKind::integers_mod && modulus_ <= mpz_class(1L << 31))
        small_modulus_ = modulus_.get_si();
}

Ring Ring::integers() { return Ring(RingKind::integers, 0); }
Ring Ring::rationals() { return Ring(RingKind::rationals, 0); }

Ring Ring::integers_mod(const mpz_class& n) {
    if (n < 2) fail(Errc::invalid_argument, "modulus must be at least 2, got " + n.get_str());
    return Ring(RingKind::integers_mod, n);
}

Ring Ring::parse(std::string_view text) {
    if (text == "z") return integers();
    if (text == "q") return rationals();
    constexpr std::string_view prefix = "zmod:";
    if (text.starts_with(prefix)) {
        mpz_class n;
        auto digits = text.substr(prefix.size());
        if (!digits.empty() && digits[0] != '-' && digits[0] != '+' && parse_decimal(digits, n))
            return integers_mod(n);
    }
    fail(Errc::parse_error, "unknown ring descriptor '" + std::string(text) +
                                "' (expected z, q or zmod:<n>)");
}

std::string Ring::to_string() const {
    switch (kind_) {
    case RingKind::integers: return "z";
    case RingKind::rationals: return "q";
    case RingKind::integers_mod: return "zmod:" + modulus_.get_str();
    }
    return "?";
}

std::optional<mpz_class> Ring::characteristic_prime() const {
    if (kind_ != RingKind::integers_mod) return std::nullopt;
    if (mpz_probab_prime_p(modulus_.get_mpz_t(), 40) == 0) return std::nullopt;
    return modulus_;
}

const mpz_class& Ring::order() const {
    if (!is_finite()) fail(Errc::not_enumerable, "ring " + to_string() + " is infinite");
    return modulus_;
}

std::vector<Scalar> Ring::enumerate() const {
    if (!is_finite()) fail(Errc::not_enumerable, "ring " + to_string() + " is not enumerable");
    if (small_modulus_ == 0) fail(Errc::too_large, "ring " + to_string() + " is too large to enumerate");
    std::vector<Scalar> out;
    out.reserve(static_cast<std::size_t>(small_modulus_));
    for (std::int64_t i = 0; i < small_modulus_; ++i) out.emplace_back(i);
    return out;
}

Scalar Ring::reduce_fast(const Scalar& v) const {
    if (kind_ != RingKind::integers_mod) return v;
    if (small_modulus_ != 0 && v.is_small()) {
        std::int64_t r = v.small_value() % small_modulus_;
        if (r < 0) r += small_modulus_;
        return Scalar(r);
    }
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v.numerator().get_mpz_t(), modulus_.get_mpz_t());
    return Scalar(r);
}

Scalar Ring::reduce(const Scalar& v) const {
    if (kind_ != RingKind::rationals && !v.is_integer())
        fail(Errc::invalid_argument, "non-integer " + v.to_string() + " has no image in " + to_string());
    return reduce_fast(v);
}

bool Ring::is_canonical(const Scalar& v) const {
    switch (kind_) {
    case RingKind::integers: return v.is_integer();
    case RingKind::rationals: return true;
    case RingKind::integers_mod: return v.is_integer() && v.sign() >= 0 && v.numerator() < modulus_;
    }
    return false;
}

std::optional<Scalar> Ring::try_invert(const Scalar& a) const {
    switch (kind_) {
    case RingKind::integers:
        if (a == Scalar(1) || a == Scalar(-1)) return a;
        return std::nullopt;
    case RingKind::rationals:
        if (a.is_zero()) return std::nullopt;
        return Scalar(1) / a;
    case RingKind::integers_mod: {
        mpz_class inv;
        mpz_class num = a.numerator();
        if (mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), modulus_.get_mpz_t()) == 0)
            return std::nullopt;
        return reduce(Scalar(inv));
    }
    }
    return std::nullopt;
}

std::optional<Scalar> Ring::divide_by_integer(const Scalar& a, const mpz_class& m) const {
    if (m == 0) fail(Errc::invalid_argument, "division by the integer 0");
    switch (kind_) {
    case RingKind::integers: {
        mpz_class num = a.numerator();
        if (!mpz_divisible_p(num.get_mpz_t(), m.get_mpz_t())) return std::nullopt;
        return Scalar(mpz_class(num / m));
    }
    case RingKind::rationals:
        return a / Scalar(m);
    case RingKind::integers_mod: {
        auto inv = try_invert(from_integer(m));
        if (!inv) return std::nullopt;
        return mul(a, *inv);
    }
    }
    return std::nullopt;
}

Scalar Ring::parse_value(std::string_view text) const {
    auto slash = text.find('/');
    mpz_class num, den(1);
    bool ok = parse_decimal(text.substr(0, slash), num);
    if (ok && slash != std::string_view::npos) ok = parse_decimal(text.substr(slash + 1), den);
    if (!ok) fail(Errc::parse_error, "malformed element '" + std::string(text) + "'");
    if (den == 0) fail(Errc::parse_error, "zero denominator in '" + std::string(text) + "'");
    return reduce(Scalar(mpq_class(num, den)));
}

RingElement::RingElement(Ring ring, Scalar value) : ring_(std::move(ring)), value_(ring_.reduce(value)) {}

RingElement RingElement::parse(const Ring& ring, std::string_view text) {
    return RingElement(ring, ring.parse_value(text));
}

std::optional<RingElement> RingElement::try_invert() const {
    auto inv = ring_.try_invert(value_);
    if (!inv) return std::nullopt;
    return RingElement(ring_, *inv);
}

std::optional<RingElement> RingElement::divide_by_integer(const mpz_class& m) const {
    auto q = ring_.divide_by_integer(value_, m);
    if (!q) return std::nullopt;
    return RingElement(ring_, *q);
}

namespace {

const Ring& common_ring(const RingElement& a, const RingElement& b) {
    if (!(a.ring() == b.ring()))
        fail(Errc::descriptor_mismatch,
             "elements of " + a.ring().to_string() + " and " + b.ring().to_string() + " cannot be combined");
    return a.ring();
}

} // namespace

RingElement operator+(const RingElement& a, const RingElement& b) {
    const Ring& r = common_ring(a, b);
    return RingElement(r, r.add(a.value_, b.value_));
}

RingElement operator-(const RingElement& a, const RingElement& b) {
    const Ring& r = common_ring(a, b);
    return RingElement(r, r.sub(a.value_, b.value_));
}

RingElement operator*(const RingElement& a, const RingElement& b) {
    const Ring& r = common_ring(a, b);
    return RingElement(r, r.mul(a.value_, b.value_));
}

RingElement operator-(const RingElement& a) { return RingElement(a.ring_, a.ring_.neg(a.value_)); }

} // namespace fg
