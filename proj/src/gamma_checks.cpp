#include <random>
#include <sstream>

#include "fg/error.hpp"
#include "fg/gamma.hpp"

namespace fg {

namespace {

constexpr std::size_t kept_counterexamples = 3;

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::size_t trial) : engine_(splitmix(seed ^ splitmix(trial))) {}

    /// Uniform on [lo, hi].
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(engine_() % span);
    }
    bool coin() { return engine_() & 1U; }

    PointedSet set(std::size_t lo, std::size_t max) {
        return PointedSet{static_cast<std::size_t>(range(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(max)))};
    }

    PointedMap map(PointedSet source, PointedSet target) {
        PointedMap a{source, target, {}};
        for (std::size_t i = 0; i < source.size; ++i)
            a.images.push_back(static_cast<std::size_t>(range(0, static_cast<std::int64_t>(target.size))));
        return a;
    }

    Scalar scalar(const Ring& ring) {
        switch (ring.kind()) {
        case RingKind::integers:
            return Scalar(range(-3, 3));
        case RingKind::rationals:
            return Scalar(mpq_class(range(-3, 3), range(1, 3)));
        case RingKind::integers_mod: {
            const mpz_class& n = ring.modulus();
            if (n.fits_slong_p()) return ring.from_integer(range(0, n.get_si() - 1));
            return ring.from_integer(static_cast<std::int64_t>(engine_() & 0x7fffffff));
        }
        }
        return Scalar(0);
    }

    /// A sparse series with up to three terms.
    Series series(const Ring& ring, std::size_t vars, unsigned precision) {
        Series s(ring, vars, precision);
        if (vars == 0) return s;
        const auto terms = range(0, 3);
        for (std::int64_t t = 0; t < terms; ++t) {
            std::vector<Exponent> e(vars, 0);
            const auto degree = range(1, precision);
            for (std::int64_t d = 0; d < degree; ++d) ++e[static_cast<std::size_t>(range(0, static_cast<std::int64_t>(vars) - 1))];
            s.add_term(MultiIndex(std::move(e)), scalar(ring));
        }
        return s;
    }

    DBElement db(const Ring& ring, PointedSet k, unsigned precision) {
        return DBElement(k, series(ring, k.size, precision));
    }

    HZElement hz(PointedSet k) {
        HZElement a = HZElement::zero(k);
        for (auto& c : a.coefficients) c = static_cast<long>(range(-3, 3));
        return a;
    }

    StrictIso strict_iso(const Ring& ring, unsigned precision) {
        Series s = Series::variable(ring, 1, precision, 0);
        for (unsigned d = 2; d <= precision; ++d)
            if (coin()) s.add_term(MultiIndex{static_cast<Exponent>(d)}, scalar(ring));
        return StrictIso::from_series(std::move(s));
    }

private:
    std::mt19937_64 engine_;
};

std::string describe(const DBElement& f) {
    return std::to_string(f.set.size) + "+: " + f.series.to_string();
}

std::string describe(const HZElement& a) {
    std::ostringstream out;
    out << a.set.size << "+: [";
    for (std::size_t i = 0; i < a.coefficients.size(); ++i) out << (i ? ", " : "") << a.coefficients[i].get_str();
    out << "]";
    return out.str();
}

std::string describe(const PointedMap& alpha) {
    std::ostringstream out;
    out << alpha.source.size << "+ -> " << alpha.target.size << "+ [";
    for (std::size_t i = 0; i < alpha.images.size(); ++i) out << (i ? ", " : "") << alpha.images[i];
    out << "]";
    return out.str();
}

class Recorder {
public:
    explicit Recorder(std::vector<std::string> names) {
        for (auto& n : names) results_.push_back(PropertyResult{std::move(n), 0, 0, {}});
    }

    void record(std::size_t property, std::size_t trial, bool ok, const std::string& witness) {
        PropertyResult& r = results_[property];
        ++r.checked;
        if (ok) return;
        ++r.failed;
        if (r.counterexamples.size() < kept_counterexamples)
            r.counterexamples.push_back("trial " + std::to_string(trial) + ": " + witness);
    }

    std::vector<PropertyResult> take() { return std::move(results_); }

private:
    std::vector<PropertyResult> results_;
};

} // namespace

CheckReport check_gammaring_axioms(const Ring& ring, unsigned precision, std::size_t max_set, std::size_t trials,
                                   std::uint64_t seed, const DbMultiplication& mul) {
    if (precision < 1) fail(Errc::invalid_argument, "precision must be at least 1");
    enum { associativity, left_unit, right_unit, naturality, unit_naturality };
    Recorder rec({"associativity", "left_unit", "right_unit", "naturality", "unit_naturality"});
    const PointedSet one{1};
    const DBElement eta = db_unit(ring, one, 1, precision);

    for (std::size_t t = 0; t < trials; ++t) {
        TrialRng rng(seed, t);
        const PointedSet K = rng.set(0, max_set), L = rng.set(0, max_set), M = rng.set(0, max_set);
        const DBElement f = rng.db(ring, K, precision);
        const DBElement g = rng.db(ring, L, precision);
        const DBElement h = rng.db(ring, M, precision);

        rec.record(associativity, t, mul(mul(f, g), h) == mul(f, mul(g, h)),
                   "f = " + describe(f) + ", g = " + describe(g) + ", h = " + describe(h));
        rec.record(left_unit, t, mul(eta, g) == g, "g = " + describe(g));
        rec.record(right_unit, t, mul(f, eta) == f, "f = " + describe(f));

        const PointedSet K2 = rng.set(0, max_set), L2 = rng.set(0, max_set);
        const PointedMap alpha = rng.map(K, K2), beta = rng.map(L, L2);
        rec.record(naturality, t,
                   mul(db_map(alpha, f), db_map(beta, g)) == db_map(smash_maps(alpha, beta), mul(f, g)),
                   "alpha = " + describe(alpha) + ", beta = " + describe(beta) + ", f = " + describe(f) +
                       ", g = " + describe(g));

        if (K.size > 0) {
            const auto i = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(K.size)));
            const DBElement mapped = db_map(alpha, db_unit(ring, K, i, precision));
            const DBElement expected = alpha(i) == 0 ? DBElement::zero(ring, K2, precision)
                                                     : db_unit(ring, K2, alpha(i), precision);
            rec.record(unit_naturality, t, mapped == expected,
                       "alpha = " + describe(alpha) + ", i = " + std::to_string(i));
        }
    }
    return CheckReport{seed, trials, rec.take()};
}

CheckReport check_fstar_homomorphism(const FormalGroupBud& F, std::size_t max_set, std::size_t trials,
                                     std::uint64_t seed) {
    enum { unit, multiplicativity, naturality, equivariance, nseries_monoid, additive_linearity };
    std::vector<std::string> names{"unit", "multiplicativity", "naturality", "equivariance", "nseries_monoid"};
    const Ring& ring = F.ring();
    const unsigned N = F.order();
    const bool additive = F == additive_fgl(ring, N);
    if (additive) names.emplace_back("additive_linearity");
    Recorder rec(std::move(names));

    for (std::size_t t = 0; t < trials; ++t) {
        TrialRng rng(seed, t);
        const PointedSet K = rng.set(1, max_set), L = rng.set(0, max_set);
        const HZElement a = rng.hz(K), b = rng.hz(L);
        const DBElement fa = fstar(F, a);

        const auto i = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(K.size)));
        rec.record(unit, t, fstar(F, HZElement::generator(K, i)) == db_unit(ring, K, i, N),
                   describe(K.size ? HZElement::generator(K, i) : a));

        rec.record(multiplicativity, t, fstar(F, hz_mul(a, b)) == db_mul(fa, fstar(F, b)),
                   "a = " + describe(a) + ", b = " + describe(b));

        const PointedMap alpha = rng.map(K, rng.set(0, max_set));
        rec.record(naturality, t, fstar(F, hz_map(alpha, a)) == db_map(alpha, fa),
                   "alpha = " + describe(alpha) + ", a = " + describe(a));

        const StrictIso phi = rng.strict_iso(ring, N);
        rec.record(equivariance, t, fstar(conjugate(F, phi), a) == db_conjugate(phi, fa),
                   "phi = " + phi.series().to_string() + ", a = " + describe(a));

        const auto n = rng.range(-3, 3), m = rng.range(-3, 3);
        rec.record(nseries_monoid, t, substitute(n_series(F, n), {n_series(F, m)}) == n_series(F, n * m),
                   "n = " + std::to_string(n) + ", m = " + std::to_string(m));

        if (additive)
            rec.record(additive_linearity, t, fa.series.is_linear(), "a = " + describe(a));
    }
    return CheckReport{seed, trials, rec.take()};
}

} // namespace fg
