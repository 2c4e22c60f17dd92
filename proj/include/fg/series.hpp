#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fg/ring.hpp"
#include "fg/scalar.hpp"

namespace fg {

using Exponent = std::uint16_t;

/// Exponent vector of a monomial, with its total degree cached.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<Exponent> exponents);
    MultiIndex(std::initializer_list<Exponent> exponents)
        : MultiIndex(std::vector<Exponent>(exponents)) {}

    /// x_var^power in a space of `vars` variables.
    static MultiIndex unit(std::size_t vars, std::size_t var, Exponent power = 1);

    std::size_t size() const noexcept { return exponents_.size(); }
    unsigned degree() const noexcept { return degree_; }
    Exponent operator[](std::size_t i) const { return exponents_[i]; }
    const std::vector<Exponent>& exponents() const noexcept { return exponents_; }

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
    friend bool operator==(const MultiIndex& a, const MultiIndex& b) = default;

private:
    std::vector<Exponent> exponents_;
    unsigned degree_ = 0;
};

/// Graded-lexicographic order: ascending total degree, and within a degree
/// descending lexicographic order of exponent vectors (x0 before x1, x0^2
/// before x0*x1 before x1^2). This is the canonical term order for output.
struct GradedLex {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// "x^2*y" (up to three variables named x, y, z) or "x1^2*x2" otherwise.
std::string format_monomial(const MultiIndex& m);

/// Truncated multivariate power series without constant term.
///
/// Terms are kept sparse and canonical: every stored monomial has total
/// degree in [1, precision] and a nonzero coefficient. Binary operations
/// require identical ring, variable count and precision; `truncated` is the
/// only precision coercion.
class Series {
public:
    using TermMap = std::map<MultiIndex, Scalar, GradedLex>;

    /// The zero series.
    Series(Ring ring, std::size_t vars, unsigned precision);

    static Series variable(const Ring& ring, std::size_t vars, unsigned precision, std::size_t var);
    static Series monomial(const Ring& ring, unsigned precision, const MultiIndex& m, const Scalar& coef);
    /// Univariate series sum_i coefs[i] * x^(i+1).
    static Series univariate(const Ring& ring, unsigned precision, const std::vector<Scalar>& coefs);

    const Ring& ring() const noexcept { return ring_; }
    std::size_t vars() const noexcept { return vars_; }
    unsigned precision() const noexcept { return precision_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    Scalar coefficient(const MultiIndex& m) const;
    /// Coefficient of x^d in a univariate series.
    Scalar coefficient(unsigned d) const;

    /// Adds coef * m in place. Monomials above the precision are dropped;
    /// a constant monomial or a wrong variable count throws.
    void add_term(const MultiIndex& m, const Scalar& coef);

    /// Lowest degree carrying a nonzero term.
    std::optional<unsigned> valuation() const;
    /// True when every term has degree 1.
    bool is_linear() const;

    Series& operator+=(const Series& g);
    Series& operator-=(const Series& g);
    friend Series operator+(Series f, const Series& g) { return f += g; }
    friend Series operator-(Series f, const Series& g) { return f -= g; }
    friend Series operator-(const Series& f);
    /// Product truncated at the common precision.
    friend Series operator*(const Series& f, const Series& g);

    Series scaled(const Scalar& b) const;
    Series scaled(const RingElement& b) const;

    /// Drops all terms of degree > k; the result has precision k.
    Series truncated(unsigned k) const;
    /// The degree-k terms, at the same precision.
    Series homogeneous_part(unsigned k) const;
    /// Formal derivative in variable `var`; precision drops to N-1. The
    /// constant term of the derivative (the coefficient of x_var) is not
    /// representable and is discarded.
    Series partial_derivative(std::size_t var) const;
    /// Antiderivative of a univariate series: x^i -> x^(i+1)/(i+1), precision
    /// N+1. Throws `not_divisible` naming the degree where i+1 cannot be
    /// divided out.
    Series integrated() const;
    /// Repeated product f^e (e >= 1).
    Series pow(unsigned e) const;

    std::string to_string() const;

    friend bool operator==(const Series& f, const Series& g);

private:
    void require_same_shape(const Series& g, const char* op) const;

    Ring ring_;
    std::size_t vars_;
    unsigned precision_;
    TermMap terms_;
};

/// g(f_1, ..., f_m) truncated at the common precision. Every f_i lives in
/// the same n-variable space; g has m = fs.size() variables.
Series substitute(const Series& g, std::span<const Series> fs);
inline Series substitute(const Series& g, std::initializer_list<Series> fs) {
    return substitute(g, std::span<const Series>(fs.begin(), fs.size()));
}

/// f(x_var) for univariate f, placed in a `vars`-variable space.
Series embed_univariate(const Series& f, std::size_t vars, std::size_t var);

/// psi with phi(psi(x)) = x = psi(phi(x)) to the precision of phi, solved
/// degree by degree. Throws `not_invertible` unless the linear coefficient is
/// a unit.
Series compositional_inverse(const Series& phi);

} // namespace fg
