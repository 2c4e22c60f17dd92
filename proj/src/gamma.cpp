#include "fg/gamma.hpp"

#include <limits>

#include "fg/error.hpp"

namespace fg {

namespace {

constexpr std::size_t dropped = std::numeric_limits<std::size_t>::max();

/// Renames variable i of g to positions[i] in a `vars`-variable space;
/// monomials touching a variable sent to `dropped` vanish.
Series relabel(const Series& g, std::size_t vars, const std::vector<std::size_t>& positions) {
    Series r(g.ring(), vars, g.precision());
    for (const auto& [m, c] : g.terms()) {
        std::vector<Exponent> e(vars, 0);
        bool killed = false;
        for (std::size_t i = 0; i < m.size() && !killed; ++i) {
            if (m[i] == 0) continue;
            if (positions[i] == dropped) killed = true;
            else e[positions[i]] = static_cast<Exponent>(e[positions[i]] + m[i]);
        }
        if (!killed) r.add_term(MultiIndex(std::move(e)), c);
    }
    return r;
}

void require_same_coefficients(const DBElement& f, const DBElement& g, const char* op) {
    if (!(f.ring() == g.ring()) || f.precision() != g.precision())
        fail(Errc::shape_mismatch, std::string(op) + ": elements differ in ring or precision");
}

mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

void enumerate_multisets(std::size_t m, unsigned k, std::size_t low, std::vector<std::size_t>& current,
                         std::vector<std::vector<std::size_t>>& out) {
    if (current.size() == k) {
        out.push_back(current);
        return;
    }
    for (std::size_t e = low; e <= m; ++e) {
        current.push_back(e);
        enumerate_multisets(m, k, e, current, out);
        current.pop_back();
    }
}

// Exponent vectors of total degree k in m variables.
std::size_t count_monomials(std::size_t m, unsigned k) {
    if (m == 0) return k == 0 ? 1 : 0;
    std::size_t total = 0;
    for (unsigned e = 0; e <= k; ++e) total += count_monomials(m - 1, k - e);
    return total;
}

} // namespace

PointedMap PointedMap::identity(PointedSet k) {
    PointedMap id{k, k, {}};
    for (std::size_t i = 1; i <= k.size; ++i) id.images.push_back(i);
    return id;
}

void PointedMap::require_valid() const {
    if (images.size() != source.size)
        fail(Errc::shape_mismatch, "pointed map lists " + std::to_string(images.size()) + " images for a " +
                                       std::to_string(source.size) + "-element source");
    for (auto v : images)
        if (v > target.size)
            fail(Errc::shape_mismatch, "image " + std::to_string(v) + " outside the target " +
                                           std::to_string(target.size) + "+");
}

std::size_t SmashProduct::index(std::size_t i, std::size_t j) const {
    if (i == 0 || j == 0) return 0;
    if (i > left.size || j > right.size) fail(Errc::invalid_argument, "smash index out of range");
    return (i - 1) * right.size + j;
}

std::pair<std::size_t, std::size_t> SmashProduct::split(std::size_t index) const {
    if (index == 0) return {0, 0};
    if (index > set.size) fail(Errc::invalid_argument, "smash index out of range");
    return {(index - 1) / right.size + 1, (index - 1) % right.size + 1};
}

SmashProduct smash(PointedSet k, PointedSet l) { return {k, l, PointedSet{k.size * l.size}}; }

PointedMap smash_maps(const PointedMap& alpha, const PointedMap& beta) {
    alpha.require_valid();
    beta.require_valid();
    const SmashProduct src = smash(alpha.source, beta.source);
    const SmashProduct dst = smash(alpha.target, beta.target);
    PointedMap out{src.set, dst.set, std::vector<std::size_t>(src.set.size, 0)};
    for (std::size_t i = 1; i <= alpha.source.size; ++i)
        for (std::size_t j = 1; j <= beta.source.size; ++j)
            out.images[src.index(i, j) - 1] = dst.index(alpha(i), beta(j));
    return out;
}

HZElement HZElement::zero(PointedSet k) { return {k, std::vector<mpz_class>(k.size, 0)}; }

HZElement HZElement::generator(PointedSet k, std::size_t i) {
    if (i == 0 || i > k.size) fail(Errc::invalid_argument, "generator index out of range");
    HZElement a = zero(k);
    a.coefficients[i - 1] = 1;
    return a;
}

HZElement hz_map(const PointedMap& alpha, const HZElement& a) {
    alpha.require_valid();
    if (!(a.set == alpha.source)) fail(Errc::shape_mismatch, "hz_map: element does not live on the source");
    HZElement out = HZElement::zero(alpha.target);
    for (std::size_t i = 1; i <= a.set.size; ++i)
        if (std::size_t t = alpha(i); t != 0) out.coefficients[t - 1] += a.coefficients[i - 1];
    return out;
}

HZElement hz_mul(const HZElement& a, const HZElement& b) {
    if (a.coefficients.size() != a.set.size || b.coefficients.size() != b.set.size)
        fail(Errc::shape_mismatch, "hz_mul: coefficient vectors do not match their sets");
    const SmashProduct s = smash(a.set, b.set);
    HZElement out = HZElement::zero(s.set);
    for (std::size_t i = 1; i <= a.set.size; ++i)
        for (std::size_t j = 1; j <= b.set.size; ++j)
            out.coefficients[s.index(i, j) - 1] = a.coefficients[i - 1] * b.coefficients[j - 1];
    return out;
}

DBElement::DBElement(PointedSet k, Series s) : set(k), series(std::move(s)) {
    if (series.vars() != set.size)
        fail(Errc::shape_mismatch, "a DB element on " + std::to_string(set.size) + "+ needs " +
                                       std::to_string(set.size) + " variables");
}

DBElement DBElement::zero(const Ring& ring, PointedSet k, unsigned precision) {
    return DBElement(k, Series(ring, k.size, precision));
}

DBElement db_unit(const Ring& ring, PointedSet k, std::size_t i, unsigned precision) {
    if (i == 0 || i > k.size)
        fail(Errc::invalid_argument, "unit index " + std::to_string(i) + " outside 1.." + std::to_string(k.size));
    return DBElement(k, Series::variable(ring, k.size, precision, i - 1));
}

DBElement db_map(const PointedMap& alpha, const DBElement& f) {
    alpha.require_valid();
    if (!(f.set == alpha.source)) fail(Errc::shape_mismatch, "db_map: element does not live on the source");
    std::vector<std::size_t> positions(f.set.size);
    for (std::size_t i = 1; i <= f.set.size; ++i) positions[i - 1] = alpha(i) == 0 ? dropped : alpha(i) - 1;
    return DBElement(alpha.target, relabel(f.series, alpha.target.size, positions));
}

DBElement db_mul(const DBElement& f, const DBElement& g) {
    require_same_coefficients(f, g, "db_mul");
    const SmashProduct s = smash(f.set, g.set);
    if (s.set.size == 0) return DBElement::zero(f.ring(), s.set, f.precision());
    // g(x_{k,1}, ..., x_{k,n}) for each element k of the left factor
    std::vector<Series> inner;
    inner.reserve(f.set.size);
    for (std::size_t k = 1; k <= f.set.size; ++k) {
        std::vector<std::size_t> positions(g.set.size);
        for (std::size_t l = 1; l <= g.set.size; ++l) positions[l - 1] = s.index(k, l) - 1;
        inner.push_back(relabel(g.series, s.set.size, positions));
    }
    return DBElement(s.set, substitute(f.series, inner));
}

DBElement db_truncate(const DBElement& f, unsigned k) { return DBElement(f.set, f.series.truncated(k)); }

DBElement db_conjugate(const StrictIso& phi, const DBElement& f) {
    if (phi.precision() != f.precision() || !(phi.series().ring() == f.ring()))
        fail(Errc::shape_mismatch, "db_conjugate: isomorphism and element differ in ring or precision");
    if (f.set.size == 0) return f;
    const Series inv = compositional_inverse(phi.series());
    std::vector<Series> args;
    args.reserve(f.set.size);
    for (std::size_t i = 0; i < f.set.size; ++i) args.push_back(embed_univariate(inv, f.set.size, i));
    const Series inner = substitute(f.series, args);
    return DBElement(f.set, substitute(phi.series(), {inner}));
}

DBElement fstar(const FormalGroupBud& F, const HZElement& a) {
    if (a.coefficients.size() != a.set.size) fail(Errc::shape_mismatch, "fstar: malformed HZ element");
    std::vector<Series> summands;
    for (std::size_t i = 0; i < a.set.size; ++i) {
        const mpz_class& n = a.coefficients[i];
        if (n == 0) continue;
        if (!n.fits_slong_p()) fail(Errc::too_large, "coefficient " + n.get_str() + " is too large");
        summands.push_back(embed_univariate(n_series(F, n.get_si()), a.set.size, i));
    }
    if (summands.empty()) return DBElement::zero(F.ring(), a.set, F.order());
    return DBElement(a.set, formal_sum(F, summands));
}

std::map<unsigned, DegreeSlot> homogeneous_decomposition(const DBElement& f) {
    const std::size_t m = f.set.size;
    std::map<unsigned, DegreeSlot> out;
    for (unsigned k = 1; k <= f.precision(); ++k) {
        DegreeSlot slot;
        std::vector<std::size_t> current;
        enumerate_multisets(m, k, 1, current, slot.multisets);
        const mpz_class expected = m == 0 ? mpz_class(0) : binomial(m + k - 1, k);
        if (mpz_class(static_cast<unsigned long>(slot.multisets.size())) != expected ||
            slot.multisets.size() != count_monomials(m, k))
            fail(Errc::internal_consistency, "degree-" + std::to_string(k) + " slot on " + std::to_string(m) +
                                                 "+ has the wrong number of multisets");
        slot.coefficients.reserve(slot.multisets.size());
        for (const auto& ms : slot.multisets) {
            std::vector<Exponent> e(m, 0);
            for (auto element : ms) ++e[element - 1];
            slot.coefficients.push_back(f.series.coefficient(MultiIndex(std::move(e))));
        }
        out.emplace(k, std::move(slot));
    }
    return out;
}

bool height_factorization_check(const FormalGroupBud& F, unsigned h) {
    auto p = F.ring().characteristic_prime();
    if (!p) fail(Errc::wrong_ring, "height factorization needs prime characteristic, got " + F.ring().to_string());
    if (h < 1) fail(Errc::invalid_argument, "height level must be at least 1");
    mpz_class ph;
    mpz_pow_ui(ph.get_mpz_t(), p->get_mpz_t(), h);
    if (ph > F.order())
        fail(Errc::invalid_argument, "bud order " + std::to_string(F.order()) + " is below p^h = " + ph.get_str());
    const unsigned cutoff = static_cast<unsigned>(ph.get_ui()) - 1;

    HZElement a = HZElement::zero(PointedSet{1});
    a.coefficients[0] = *p;
    const bool factors = db_truncate(fstar(F, a), cutoff).series.is_zero();

    const HeightResult ht = height(F, F.order());
    const bool height_at_least_h =
        std::holds_alternative<HeightAtLeast>(ht) || std::get<HeightFinite>(ht).height >= h;
    if (factors != height_at_least_h)
        fail(Errc::internal_consistency, "truncated F_*(p x) disagrees with the height of F");
    return factors;
}

bool CheckReport::passed() const { return failures() == 0; }

std::size_t CheckReport::failures() const {
    std::size_t n = 0;
    for (const auto& p : properties) n += p.failed;
    return n;
}

} // namespace fg
