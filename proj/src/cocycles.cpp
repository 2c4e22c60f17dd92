#include "fg/cocycles.hpp"

#include <algorithm>
#include <set>

#include "fg/error.hpp"

namespace fg {

namespace {

MultiIndex xy(unsigned i, unsigned j) {
    return MultiIndex{static_cast<Exponent>(i), static_cast<Exponent>(j)};
}

std::string join(const std::vector<Scalar>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].to_string();
    return out + "]";
}

mpz_class binomial(unsigned n, unsigned k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

} // namespace

CocycleCheck is_symmetric_cocycle(const Series& c, unsigned k) {
    if (c.vars() != 2) fail(Errc::shape_mismatch, "a 2-cocycle is a series in two variables");
    if (k < 2) fail(Errc::shape_mismatch, "cocycle degree must be at least 2");
    if (c.precision() < k)
        fail(Errc::shape_mismatch, "precision " + std::to_string(c.precision()) + " below the degree " +
                                       std::to_string(k));
    for (const auto& [m, coef] : c.terms())
        if (m.degree() != k)
            fail(Errc::shape_mismatch, "term " + format_monomial(m) + " is not of degree " + std::to_string(k));

    Series ck = c.truncated(k);
    for (const auto& [m, coef] : ck.terms()) {
        if (ck.coefficient(xy(m[1], m[0])) != coef) return {false, "symmetry", format_monomial(m)};
    }

    const Ring& ring = c.ring();
    Series x = Series::variable(ring, 3, k, 0);
    Series y = Series::variable(ring, 3, k, 1);
    Series z = Series::variable(ring, 3, k, 2);
    Series lhs = substitute(ck, {x, y}) + substitute(ck, {x + y, z});
    Series rhs = substitute(ck, {x, y + z}) + substitute(ck, {y, z});
    if (lhs == rhs) return {};
    Series diff = lhs - rhs;
    return {false, "cocycle", format_monomial(diff.terms().begin()->first)};
}

SymCocycle SymCocycle::certify(const Series& c, unsigned k) {
    auto check = is_symmetric_cocycle(c, k);
    if (!check)
        fail(Errc::axiom_violation, "not a symmetric 2-cocycle: " + check.failed_relation + " fails at " +
                                        check.monomial);
    return SymCocycle(k, c.truncated(k));
}

SymCocycle SymCocycle::zero(const Ring& ring, unsigned k) {
    if (k < 2) fail(Errc::invalid_argument, "cocycle degree must be at least 2");
    return SymCocycle(k, Series(ring, 2, k));
}

SymCocycle SymCocycle::from_coefficients(const Ring& ring, unsigned k, const std::vector<Scalar>& a) {
    if (k < 2) fail(Errc::invalid_argument, "cocycle degree must be at least 2");
    if (a.size() != k - 1)
        fail(Errc::shape_mismatch, "expected " + std::to_string(k - 1) + " coefficients a_1..a_(k-1)");
    Series s(ring, 2, k);
    for (unsigned i = 1; i < k; ++i) s.add_term(xy(i, k - i), a[i - 1]);
    return certify(s, k);
}

std::vector<Scalar> SymCocycle::coefficients() const {
    std::vector<Scalar> a;
    a.reserve(degree_ - 1);
    for (unsigned i = 1; i < degree_; ++i) a.push_back(series_.coefficient(xy(i, degree_ - i)));
    return a;
}

SymCocycle operator+(const SymCocycle& a, const SymCocycle& b) {
    if (a.degree_ != b.degree_) fail(Errc::shape_mismatch, "cocycles of different degree");
    return SymCocycle(a.degree_, a.series_ + b.series_);
}

mpz_class binomial_gcd(unsigned k) {
    if (k < 2) fail(Errc::invalid_argument, "d_k is defined for k >= 2");
    mpz_class g = 0;
    for (unsigned i = 1; i < k; ++i) g = gcd(g, binomial(k, i));
    return g;
}

std::optional<unsigned> prime_power_base(unsigned k) {
    if (k < 2) return std::nullopt;
    unsigned p = 2;
    while (k % p != 0) ++p;
    while (k % p == 0) k /= p;
    if (k != 1) return std::nullopt;
    return p;
}

SymCocycle universal_cocycle(unsigned k, const Ring& ring) {
    const mpz_class d = binomial_gcd(k);
    Series s(ring, 2, k);
    for (unsigned i = 1; i < k; ++i) {
        mpz_class c = binomial(k, i);
        if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()))
            fail(Errc::internal_consistency, "d_k does not divide C(k, i)");
        s.add_term(xy(i, k - i), ring.from_integer(mpz_class(-c / d)));
    }
    return SymCocycle::certify(s, k);
}

SymCocycle principal_cocycle(const RingElement& b, unsigned k) {
    if (k < 2) fail(Errc::invalid_argument, "cocycle degree must be at least 2");
    const Ring& ring = b.ring();
    Series s(ring, 2, k);
    for (unsigned i = 1; i < k; ++i)
        s.add_term(xy(i, k - i), ring.mul(b.value(), ring.from_integer(mpz_class(-binomial(k, i)))));
    return SymCocycle::certify(s, k);
}

std::vector<SymCocycle> classify_cocycles(const Ring& ring, unsigned k, std::uint64_t budget) {
    if (!ring.is_finite()) fail(Errc::not_enumerable, "classification needs a finite ring");
    if (k < 2) fail(Errc::invalid_argument, "cocycle degree must be at least 2");
    const unsigned free = k / 2;
    mpz_class space;
    mpz_pow_ui(space.get_mpz_t(), ring.order().get_mpz_t(), free);
    if (space > mpz_class(static_cast<unsigned long>(budget)))
        fail(Errc::too_large, "search space " + space.get_str() + " exceeds the budget " + std::to_string(budget));

    const std::vector<Scalar> elements = ring.enumerate();
    const std::size_t n = elements.size();
    std::vector<std::size_t> digits(free, 0);
    std::vector<std::vector<Scalar>> found;
    while (true) {
        std::vector<Scalar> a(k - 1);
        for (unsigned i = 1; i <= free; ++i) {
            a[i - 1] = elements[digits[i - 1]];
            a[k - i - 1] = elements[digits[i - 1]];
        }
        Series s(ring, 2, k);
        for (unsigned i = 1; i < k; ++i) s.add_term(xy(i, k - i), a[i - 1]);
        if (is_symmetric_cocycle(s, k)) found.push_back(std::move(a));

        std::size_t pos = 0;
        while (pos < free && ++digits[pos] == n) digits[pos++] = 0;
        if (pos == free) break;
    }
    std::sort(found.begin(), found.end());

    const SymCocycle ck = universal_cocycle(k, ring);
    std::set<std::vector<Scalar>> multiples;
    for (const auto& b : elements) {
        const Series multiple = ck.series().scaled(b);
        std::vector<Scalar> a;
        for (unsigned i = 1; i < k; ++i) a.push_back(multiple.coefficient(xy(i, k - i)));
        multiples.insert(std::move(a));
    }
    std::set<std::vector<Scalar>> enumerated(found.begin(), found.end());
    if (enumerated != multiples) {
        std::vector<Scalar> witness;
        for (const auto& v : enumerated)
            if (!multiples.count(v)) { witness = v; break; }
        if (witness.empty())
            for (const auto& v : multiples)
                if (!enumerated.count(v)) { witness = v; break; }
        fail(Errc::internal_consistency, "cocycles over " + ring.to_string() + " in degree " + std::to_string(k) +
                                             " differ from the multiples of c_k at coefficients " + join(witness));
    }

    std::vector<SymCocycle> out;
    out.reserve(found.size());
    for (const auto& a : found) out.push_back(SymCocycle::from_coefficients(ring, k, a));
    return out;
}

GroupoidInvariants groupoid_invariants(const Ring& ring, unsigned k, std::uint64_t budget) {
    const auto cocycles = classify_cocycles(ring, k, budget);
    const auto elements = ring.enumerate();
    const std::uint64_t order = elements.size();

    std::set<std::vector<Scalar>> image;
    std::uint64_t kernel = 0;
    for (const auto& b : elements) {
        SymCocycle t = principal_cocycle(RingElement(ring, b), k);
        if (t.series().is_zero()) ++kernel;
        image.insert(t.coefficients());
    }

    GroupoidInvariants inv;
    inv.cocycle_count = cocycles.size();
    inv.image_size = image.size();
    inv.stabilizer_size = kernel;
    if (inv.cocycle_count % inv.image_size != 0)
        fail(Errc::internal_consistency, "principal cocycles do not partition the cocycles evenly");
    inv.pi0_size = inv.cocycle_count / inv.image_size;

    if (inv.pi0_size * (order / inv.stabilizer_size) != inv.cocycle_count || order % inv.stabilizer_size != 0)
        fail(Errc::internal_consistency, "orbit-stabilizer count fails");

    if (auto p = prime_power_base(k)) {
        const Scalar ps = ring.from_integer(static_cast<std::int64_t>(*p));
        std::set<Scalar> multiples_of_p;
        std::uint64_t p_torsion = 0;
        for (const auto& b : elements) {
            Scalar pb = ring.mul(ps, b);
            multiples_of_p.insert(pb);
            if (pb.is_zero()) ++p_torsion;
        }
        const std::uint64_t quotient = order / multiples_of_p.size();
        if (inv.pi0_size != quotient || inv.stabilizer_size != p_torsion)
            fail(Errc::internal_consistency,
                 "degree " + std::to_string(k) + " over " + ring.to_string() + ": pi0 = " +
                     std::to_string(inv.pi0_size) + ", stabilizer = " + std::to_string(inv.stabilizer_size) +
                     " but |B/pB| = " + std::to_string(quotient) + ", |B[p]| = " + std::to_string(p_torsion));
    } else if (inv.pi0_size != 1) {
        fail(Errc::internal_consistency, "degree " + std::to_string(k) + " is not a prime power but pi0 = " +
                                             std::to_string(inv.pi0_size));
    }
    return inv;
}

} // namespace fg
