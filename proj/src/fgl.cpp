#include "fg/fgl.hpp"

#include "fg/error.hpp"

namespace fg {

namespace {

void require_order(const FormalGroupBud& F, const Series& s, const char* what) {
    if (s.precision() != F.order() || !(s.ring() == F.ring()))
        fail(Errc::shape_mismatch, std::string(what) + ": precision " + std::to_string(s.precision()) + " over " +
                                       s.ring().to_string() + " does not match the bud order " +
                                       std::to_string(F.order()) + " over " + F.ring().to_string());
}

} // namespace

std::optional<BudViolation> find_bud_violation(const Series& law) {
    if (law.vars() != 2)
        fail(Errc::shape_mismatch, "a formal group law is a series in two variables, got " +
                                       std::to_string(law.vars()));
    const MultiIndex x{1, 0}, y{0, 1};
    if (!law.coefficient(x).is_one()) return BudViolation{"identity", "x"};
    if (!law.coefficient(y).is_one()) return BudViolation{"identity", "y"};
    for (const auto& [m, c] : law.terms()) {
        if (m.degree() > 1 && (m[0] == 0 || m[1] == 0)) return BudViolation{"identity", format_monomial(m)};
    }
    for (const auto& [m, c] : law.terms()) {
        if (law.coefficient(MultiIndex{m[1], m[0]}) != c) return BudViolation{"symmetry", format_monomial(m)};
    }
    const Ring& ring = law.ring();
    const unsigned n = law.precision();
    Series X = Series::variable(ring, 3, n, 0);
    Series Y = Series::variable(ring, 3, n, 1);
    Series Z = Series::variable(ring, 3, n, 2);
    Series left = substitute(law, {substitute(law, {X, Y}), Z});
    Series right = substitute(law, {X, substitute(law, {Y, Z})});
    if (!(left == right)) {
        Series diff = left - right;
        return BudViolation{"associativity", format_monomial(diff.terms().begin()->first)};
    }
    return std::nullopt;
}

FormalGroupBud FormalGroupBud::validate(Series law) {
    if (auto v = find_bud_violation(law))
        fail(Errc::axiom_violation, "not a formal group law bud: " + v->axiom + " axiom fails at " + v->monomial);
    return FormalGroupBud(std::move(law));
}

FormalGroupBud additive_fgl(const Ring& ring, unsigned precision) {
    return FormalGroupBud::validate(Series::variable(ring, 2, precision, 0) + Series::variable(ring, 2, precision, 1));
}

FormalGroupBud multiplicative_fgl(const Ring& ring, unsigned precision) {
    Series x = Series::variable(ring, 2, precision, 0);
    Series y = Series::variable(ring, 2, precision, 1);
    return FormalGroupBud::validate(x + y + x * y);
}

StrictIso StrictIso::from_series(Series phi) {
    if (phi.vars() != 1) fail(Errc::shape_mismatch, "a strict isomorphism is a univariate series");
    if (!phi.coefficient(1U).is_one())
        fail(Errc::invalid_argument, "a strict isomorphism has leading term x, not " +
                                         phi.coefficient(1U).to_string() + "*x");
    return StrictIso(std::move(phi));
}

StrictIso StrictIso::identity(const Ring& ring, unsigned precision) {
    return StrictIso(Series::variable(ring, 1, precision, 0));
}

StrictIso StrictIso::elementary(const RingElement& b, unsigned k, unsigned precision) {
    if (k < 2) fail(Errc::invalid_argument, "x + b x^k is strict only for k >= 2");
    Series s = Series::variable(b.ring(), 1, precision, 0);
    s.add_term(MultiIndex{static_cast<Exponent>(k)}, b.value());
    return StrictIso(std::move(s));
}

StrictIso compose(const StrictIso& phi, const StrictIso& psi) {
    return StrictIso(substitute(phi.series(), {psi.series()}));
}

StrictIso invert(const StrictIso& phi) { return StrictIso(compositional_inverse(phi.series())); }

Series formal_inverse(const FormalGroupBud& F) {
    const Ring& ring = F.ring();
    const unsigned n = F.order();
    const Series x = Series::variable(ring, 1, n, 0);
    Series iota = -x;
    // F(x, iota + c x^d) = F(x, iota) + c x^d mod x^(d+1)
    for (unsigned d = 2; d <= n; ++d) {
        Scalar residual = substitute(F.law(), {x, iota}).coefficient(d);
        if (!residual.is_zero()) iota.add_term(MultiIndex{static_cast<Exponent>(d)}, ring.neg(residual));
    }
    return iota;
}

Series n_series(const FormalGroupBud& F, std::int64_t n) {
    const Ring& ring = F.ring();
    const unsigned prec = F.order();
    const Series x = Series::variable(ring, 1, prec, 0);
    if (n == 0) return Series(ring, 1, prec);
    std::uint64_t magnitude = n < 0 ? 0 - static_cast<std::uint64_t>(n) : static_cast<std::uint64_t>(n);
    // Ladder over the binary digits: [2m] = F([m],[m]), [m+1] = F(x,[m]).
    int top = 63;
    while (!((magnitude >> top) & 1U)) --top;
    Series acc = x;
    for (int bit = top - 1; bit >= 0; --bit) {
        acc = substitute(F.law(), {acc, acc});
        if ((magnitude >> bit) & 1U) acc = substitute(F.law(), {x, acc});
    }
    if (n < 0) acc = substitute(acc, {formal_inverse(F)});
    return acc;
}

Series formal_sum(const FormalGroupBud& F, std::span<const Series> summands) {
    if (summands.empty()) fail(Errc::invalid_argument, "formal sum of no summands");
    Series acc = summands.front();
    require_order(F, acc, "formal_sum");
    for (std::size_t i = 1; i < summands.size(); ++i) {
        if (summands[i].vars() != acc.vars()) fail(Errc::shape_mismatch, "formal_sum: summands differ in shape");
        require_order(F, summands[i], "formal_sum");
        acc = substitute(F.law(), {acc, summands[i]});
    }
    return acc;
}

FormalGroupBud conjugate(const FormalGroupBud& F, const StrictIso& phi) {
    require_order(F, phi.series(), "conjugate");
    const Series inv = compositional_inverse(phi.series());
    const Series inner = substitute(F.law(), {embed_univariate(inv, 2, 0), embed_univariate(inv, 2, 1)});
    try {
        return FormalGroupBud::validate(substitute(phi.series(), {inner}));
    } catch (const Error& e) {
        if (e.code() != Errc::axiom_violation) throw;
        fail(Errc::internal_consistency, std::string("conjugation left the set of buds: ") + e.what());
    }
}

FormalGroupBud truncate_bud(const FormalGroupBud& F, unsigned k) {
    if (k < 1 || k >= F.order())
        fail(Errc::invalid_argument, "truncation order " + std::to_string(k) + " outside [1, " +
                                         std::to_string(F.order() - 1) + "]");
    return FormalGroupBud::validate(F.law().truncated(k));
}

FormalGroupBud add_cocycle(const FormalGroupBud& F, const SymCocycle& c) {
    if (c.degree() != F.order())
        fail(Errc::shape_mismatch, "cocycle degree " + std::to_string(c.degree()) + " differs from bud order " +
                                       std::to_string(F.order()));
    if (!(c.ring() == F.ring())) fail(Errc::descriptor_mismatch, "cocycle and bud over different rings");
    return FormalGroupBud::validate(F.law() + c.series());
}

SymCocycle difference_cocycle(const FormalGroupBud& F, const FormalGroupBud& G) {
    const unsigned k = F.order();
    if (G.order() != k || !(F.ring() == G.ring()))
        fail(Errc::bud_mismatch, "buds differ in order or ring");
    if (k < 2) fail(Errc::bud_mismatch, "difference cocycles need buds of order at least 2");
    if (!(F.law().truncated(k - 1) == G.law().truncated(k - 1)))
        fail(Errc::bud_mismatch, "buds have different " + std::to_string(k - 1) + "-buds");
    return SymCocycle::certify(F.law() - G.law(), k);
}

FormalGroupBud bud_isomorphism_step(const FormalGroupBud& F, const RingElement& b) {
    const unsigned k = F.order();
    if (k < 2) fail(Errc::invalid_argument, "the isomorphism step needs a bud of order at least 2");
    FormalGroupBud conj = conjugate(F, StrictIso::elementary(b, k, k));
    FormalGroupBud shifted = add_cocycle(F, principal_cocycle(-b, k));
    if (!(conj == shifted))
        fail(Errc::internal_consistency, "conjugation by x + " + b.to_string() + "*x^" + std::to_string(k) +
                                             " gives " + conj.law().to_string() + ", expected " +
                                             shifted.law().to_string());
    return conj;
}

HeightResult height(const FormalGroupBud& F, unsigned bound) {
    auto p = F.ring().characteristic_prime();
    if (!p) fail(Errc::wrong_ring, "height needs a ring of prime characteristic, got " + F.ring().to_string());
    if (bound < 1 || bound > F.order())
        fail(Errc::invalid_argument, "height bound " + std::to_string(bound) + " outside [1, " +
                                         std::to_string(F.order()) + "]");
    if (!p->fits_slong_p()) fail(Errc::too_large, "characteristic too large");
    const Series ps = n_series(F, p->get_si());
    const auto low = ps.valuation();
    if (!low || *low > bound) return HeightAtLeast{bound};
    const unsigned prime = static_cast<unsigned>(p->get_ui());
    unsigned d = *low, h = 0;
    while (d % prime == 0) {
        d /= prime;
        ++h;
    }
    if (d != 1 || h == 0)
        fail(Errc::invalid_fgl, "lowest term of [p]_F sits in degree " + std::to_string(*low) +
                                    ", which is not a power of " + std::to_string(prime));
    return HeightFinite{h, RingElement(F.ring(), ps.coefficient(*low))};
}

StrictIso logarithm(const FormalGroupBud& F) {
    const Ring& ring = F.ring();
    const unsigned n = F.order();
    Series log = Series::variable(ring, 1, n, 0);
    if (n >= 2) {
        // (dF/dy)(x, 0) = 1 + g; the constant 1 is the y-coefficient of F.
        Series dy = F.law().partial_derivative(1);
        Series g(ring, 1, n - 1);
        for (const auto& [m, c] : dy.terms())
            if (m[1] == 0) g.add_term(MultiIndex{m[0]}, c);
        // 1/(1+g) - 1 = sum_{j>=1} (-g)^j
        Series reciprocal_tail(ring, 1, n - 1);
        Series power = -g;
        for (unsigned j = 1; j < n && !power.is_zero(); ++j) {
            reciprocal_tail += power;
            power = power * -g;
        }
        try {
            log += reciprocal_tail.integrated();
        } catch (const Error& e) {
            if (e.code() != Errc::not_divisible) throw;
            fail(Errc::needs_q_algebra, std::string("logarithm needs a Q-algebra: ") + e.what());
        }
    }
    StrictIso l = StrictIso::from_series(std::move(log));
    if (!(conjugate(F, l) == additive_fgl(ring, n)))
        fail(Errc::internal_consistency, "conjugation by the logarithm is not the additive law");
    return l;
}

} // namespace fg
