// Randomized checks of the algebraic laws each module promises.
#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fg/cocycles.hpp"
#include "fg/fgl.hpp"
#include "fg/gamma.hpp"
#include "fg/homology.hpp"
#include "oracles.hpp"
#include "random_buds.hpp"

using namespace fg;

namespace {

const Ring Z = Ring::integers();
const Ring Q = Ring::rationals();

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng(seed) {}
    std::mt19937_64 rng;

    long range(long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }

    Scalar scalar(const Ring& r) {
        if (r.kind() == RingKind::rationals) return Scalar(mpq_class(range(-3, 3), range(1, 3)));
        return r.from_integer(static_cast<std::int64_t>(range(-3, 3)));
    }

    Series series(const Ring& r, std::size_t vars, unsigned N, unsigned max_terms = 4) {
        Series s(r, vars, N);
        const long terms = range(0, max_terms);
        for (long t = 0; t < terms; ++t) {
            std::vector<Exponent> e(vars, 0);
            const long d = range(1, N);
            for (long i = 0; i < d; ++i) ++e[static_cast<std::size_t>(range(0, static_cast<long>(vars) - 1))];
            s.add_term(MultiIndex(e), scalar(r));
        }
        return s;
    }

    StrictIso iso(const Ring& r, unsigned N) {
        Series s = Series::variable(r, 1, N, 0);
        for (unsigned d = 2; d <= N; ++d)
            if (rng() & 1U) s.add_term(MultiIndex{static_cast<Exponent>(d)}, scalar(r));
        return StrictIso::from_series(s);
    }

    PointedMap map(PointedSet source, PointedSet target) {
        PointedMap a{source, target, {}};
        for (std::size_t i = 0; i < source.size; ++i) a.images.push_back(static_cast<std::size_t>(range(0, static_cast<long>(target.size))));
        return a;
    }

    DBElement db(const Ring& r, std::size_t m, unsigned N) { return DBElement(PointedSet{m}, m ? series(r, m, N, 3) : Series(r, 0, N)); }
};

std::vector<Ring> small_finite_rings() {
    std::vector<Ring> out;
    for (long n = 2; n <= 8; ++n) out.push_back(Ring::integers_mod(n));
    return out;
}

} // namespace

// ---- coefficient rings

TEST(RingLaws, ExhaustiveAxiomsUpToEight) {
    for (const Ring& r : small_finite_rings()) {
        const auto els = r.enumerate();
        for (const auto& a : els)
            for (const auto& b : els) {
                EXPECT_EQ(r.mul(a, b), r.mul(b, a));
                for (const auto& c : els) {
                    EXPECT_EQ(r.add(r.add(a, b), c), r.add(a, r.add(b, c)));
                    EXPECT_EQ(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
                }
            }
    }
}

TEST(RingLaws, InversesAndDivisionAreExact) {
    Gen g(1);
    std::vector<Ring> rings = small_finite_rings();
    rings.push_back(Z);
    rings.push_back(Q);
    for (const Ring& r : rings)
        for (int t = 0; t < 40; ++t) {
            const Scalar a = g.scalar(r);
            if (auto u = r.try_invert(a)) EXPECT_TRUE(r.mul(a, *u).is_one());
            const long m = g.range(1, 6);
            if (auto b = r.divide_by_integer(a, m)) EXPECT_EQ(r.mul(r.from_integer(static_cast<std::int64_t>(m)), *b), a);
        }
}

TEST(RingLaws, CharacteristicPrimeIsTheSmallestKillingPrime) {
    for (long n = 2; n <= 40; ++n) {
        const Ring r = Ring::integers_mod(n);
        const auto p = r.characteristic_prime();
        if (!p) continue;
        const long pv = p->get_si();
        EXPECT_TRUE(r.from_integer(static_cast<std::int64_t>(pv)).is_zero());
        for (long q = 2; q < pv; ++q) EXPECT_FALSE(r.from_integer(static_cast<std::int64_t>(q)).is_zero());
    }
}

// ---- truncated series

TEST(SeriesLaws, SubstitutionIsAssociative) {
    Gen g(2);
    for (const Ring& r : {Z, Ring::integers_mod(6), Q})
        for (int t = 0; t < 15; ++t) {
            const unsigned N = static_cast<unsigned>(g.range(1, 5));
            const Series outer = g.series(r, 2, N);
            const std::vector<Series> fs{g.series(r, 2, N), g.series(r, 2, N)};
            const std::vector<Series> hs{g.series(r, 3, N), g.series(r, 3, N)};
            std::vector<Series> composed;
            for (const auto& f : fs) composed.push_back(substitute(f, hs));
            EXPECT_EQ(substitute(substitute(outer, fs), hs), substitute(outer, composed));
        }
}

TEST(SeriesLaws, SubstitutionDistributesOverTheOuterSum) {
    Gen g(3);
    for (int t = 0; t < 30; ++t) {
        const Series g1 = g.series(Z, 2, 5), g2 = g.series(Z, 2, 5);
        const std::vector<Series> fs{g.series(Z, 3, 5), g.series(Z, 3, 5)};
        EXPECT_EQ(substitute(g1 + g2, fs), substitute(g1, fs) + substitute(g2, fs));
    }
}

TEST(SeriesLaws, InverseIsTwoSidedAndAnInvolution) {
    Gen g(4);
    for (const Ring& r : {Z, Ring::integers_mod(4), Q})
        for (int t = 0; t < 20; ++t) {
            const unsigned N = static_cast<unsigned>(g.range(1, 8));
            const Series phi = g.iso(r, N).series();
            const Series inv = compositional_inverse(phi);
            const Series x = Series::variable(r, 1, N, 0);
            EXPECT_EQ(substitute(phi, {inv}), x);
            EXPECT_EQ(substitute(inv, {phi}), x);
            EXPECT_EQ(compositional_inverse(inv), phi);
        }
}

TEST(SeriesLaws, ProductIsCommutativeAssociativeAndTruncationCompatible) {
    Gen g(5);
    for (int t = 0; t < 30; ++t) {
        const Ring r = Ring::integers_mod(6);
        const Series a = g.series(r, 3, 6), b = g.series(r, 3, 6), c = g.series(r, 3, 6);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        const unsigned k = static_cast<unsigned>(g.range(1, 6));
        EXPECT_EQ((a * b).truncated(k), a.truncated(k) * b.truncated(k));
    }
}

// ---- formal group laws

TEST(FglLaws, NSeriesIsAMonoidMapAndAdditive) {
    std::mt19937_64 rng(6);
    const Ring z6 = Ring::integers_mod(6);
    std::vector<FormalGroupBud> buds{additive_fgl(z6, 6), multiplicative_fgl(z6, 6), multiplicative_fgl(Z, 6)};
    for (int t = 0; t < 5; ++t) buds.push_back(testing_support::random_iterated_bud(z6, 6, rng));
    for (const auto& F : buds) {
        const Series x = Series::variable(F.ring(), 1, F.order(), 0);
        std::map<long, Series> n;
        for (long i = -16; i <= 16; ++i) n.emplace(i, n_series(F, i));
        for (long a = -4; a <= 4; ++a)
            for (long b = -4; b <= 4; ++b) {
                EXPECT_EQ(substitute(n.at(a), {n.at(b)}), n.at(a * b)) << a << " " << b;
                EXPECT_EQ(substitute(F.law(), {n.at(a), n.at(b)}), n.at(a + b)) << a << " " << b;
            }
    }
}

TEST(FglLaws, ConjugationIsAGroupAction) {
    Gen g(7);
    std::mt19937_64 rng(7);
    const Ring z6 = Ring::integers_mod(6);
    for (int t = 0; t < 10; ++t) {
        const FormalGroupBud F = testing_support::random_iterated_bud(z6, 5, rng);
        const StrictIso phi = g.iso(z6, 5), psi = g.iso(z6, 5);
        EXPECT_EQ(conjugate(conjugate(F, psi), phi), conjugate(F, compose(phi, psi)));
        EXPECT_EQ(conjugate(F, StrictIso::identity(z6, 5)), F);
    }
}

TEST(FglLaws, CocycleAdditionRoundTrips) {
    std::mt19937_64 rng(8);
    const Ring z6 = Ring::integers_mod(6);
    for (int t = 0; t < 15; ++t) {
        const unsigned k = 2 + rng() % 4;
        const FormalGroupBud F = testing_support::random_iterated_bud(z6, k, rng);
        const auto cocycles = classify_cocycles(z6, k);
        const SymCocycle& c = cocycles[rng() % cocycles.size()];
        const FormalGroupBud G = add_cocycle(F, c);
        EXPECT_EQ(difference_cocycle(G, F), c);
        EXPECT_EQ(add_cocycle(F, difference_cocycle(G, F)), G);
        EXPECT_TRUE(is_symmetric_cocycle(difference_cocycle(F, G).series(), k));
    }
}

TEST(FglLaws, ElementaryConjugationShiftsByMinusTheta) {
    std::mt19937_64 rng(9);
    for (const Ring& r : {Z, Ring::integers_mod(6), Q}) {
        for (int t = 0; t < 15; ++t) {
            const unsigned k = 2 + rng() % 4;
            const FormalGroupBud F = r.is_finite() ? testing_support::random_iterated_bud(r, k, rng)
                                                   : (rng() & 1U ? multiplicative_fgl(r, k) : additive_fgl(r, k));
            const RingElement b(r, r.from_integer(static_cast<std::int64_t>(rng() % 7) - 3));
            const FormalGroupBud conj = conjugate(F, StrictIso::elementary(b, k, k));
            EXPECT_EQ(conj, add_cocycle(F, principal_cocycle(-b, k)));
            // against the +theta(b) form the difference is exactly -2 theta(b)
            const Series gap = conj.law() - add_cocycle(F, principal_cocycle(b, k)).law();
            EXPECT_EQ(gap, principal_cocycle(b, k).series().scaled(Scalar(-2)));
            EXPECT_EQ(bud_isomorphism_step(F, b), conj);
        }
    }
}

TEST(FglLaws, HeightIsAnIsomorphismInvariant) {
    Gen g(10);
    std::mt19937_64 rng(10);
    for (long p : {2L, 3L, 5L}) {
        const Ring r = Ring::integers_mod(p);
        const unsigned N = static_cast<unsigned>(p * p);
        std::vector<FormalGroupBud> buds{multiplicative_fgl(r, N), additive_fgl(r, N)};
        if (p == 2) buds.push_back(testing_support::random_iterated_bud(r, N, rng));
        for (const auto& F : buds)
            for (int t = 0; t < 4; ++t) {
                const HeightResult a = height(F, N), b = height(conjugate(F, g.iso(r, N)), N);
                ASSERT_EQ(a.index(), b.index());
                if (const auto* fa = std::get_if<HeightFinite>(&a)) EXPECT_EQ(fa->height, std::get<HeightFinite>(b).height);
            }
    }
}

TEST(FglLaws, LogarithmLinearizesRandomLaws) {
    Gen g(11);
    for (int t = 0; t < 8; ++t) {
        const unsigned N = static_cast<unsigned>(g.range(2, 8));
        const FormalGroupBud base = t % 2 ? multiplicative_fgl(Q, N) : additive_fgl(Q, N);
        const FormalGroupBud F = conjugate(base, g.iso(Q, N));
        EXPECT_EQ(conjugate(F, logarithm(F)), additive_fgl(Q, N));
    }
}

// ---- cocycles

TEST(CocycleLaws, OutputsAreCocyclesAndThetaIsDkTimesCk) {
    for (long n : {2L, 3L, 4L, 6L, 8L, 9L}) {
        const Ring r = Ring::integers_mod(n);
        for (unsigned k = 2; k <= 8; ++k) {
            const SymCocycle ck = universal_cocycle(k, r);
            EXPECT_TRUE(is_symmetric_cocycle(ck.series(), k));
            const Scalar dk = r.from_integer(binomial_gcd(k));
            for (const auto& b : r.enumerate()) {
                const SymCocycle t = principal_cocycle(RingElement(r, b), k);
                EXPECT_TRUE(is_symmetric_cocycle(t.series(), k));
                EXPECT_EQ(t.series(), ck.series().scaled(r.mul(dk, b)));
            }
        }
    }
}

TEST(CocycleLaws, ClassificationIsASubgroupContainingThePrincipalOnes) {
    for (long n : {2L, 3L, 4L, 6L}) {
        const Ring r = Ring::integers_mod(n);
        for (unsigned k = 2; k <= 6; ++k) {
            const auto all = classify_cocycles(r, k);
            std::set<std::vector<Scalar>> set;
            for (const auto& c : all) set.insert(c.coefficients());
            for (const auto& a : all) {
                for (const auto& b : all) EXPECT_TRUE(set.count((a + b).coefficients()));
                for (const auto& e : r.enumerate())
                    EXPECT_TRUE(set.count((a + principal_cocycle(RingElement(r, e), k)).coefficients()));
            }
        }
    }
}

TEST(CocycleLaws, OrbitStabilizer) {
    for (long n : {2L, 3L, 4L, 6L, 8L, 9L})
        for (unsigned k = 2; k <= 6; ++k) {
            const auto inv = groupoid_invariants(Ring::integers_mod(n), k);
            EXPECT_EQ(inv.pi0_size * (static_cast<std::uint64_t>(n) / inv.stabilizer_size), inv.cocycle_count);
        }
}

// ---- gamma

TEST(GammaLaws, TruncationCommutesWithTheStructure) {
    Gen g(12);
    const Ring z4 = Ring::integers_mod(4);
    for (int t = 0; t < 40; ++t) {
        const unsigned N = 6, k = static_cast<unsigned>(g.range(1, 5));
        const DBElement f = g.db(z4, static_cast<std::size_t>(g.range(0, 3)), N);
        const DBElement h = g.db(z4, static_cast<std::size_t>(g.range(0, 3)), N);
        EXPECT_EQ(db_truncate(db_mul(f, h), k), db_mul(db_truncate(f, k), db_truncate(h, k)));
        const PointedMap a = g.map(f.set, PointedSet{static_cast<std::size_t>(g.range(0, 3))});
        EXPECT_EQ(db_truncate(db_map(a, f), k), db_map(a, db_truncate(f, k)));
        const StrictIso phi = g.iso(z4, N);
        const StrictIso phik = StrictIso::from_series(phi.series().truncated(k));
        EXPECT_EQ(db_truncate(db_conjugate(phi, f), k), db_conjugate(phik, db_truncate(f, k)));
        HZElement x = HZElement::zero(f.set);
        for (auto& c : x.coefficients) c = g.range(-3, 3);
        const FormalGroupBud F = multiplicative_fgl(z4, N);
        if (k < N) EXPECT_EQ(db_truncate(fstar(F, x), k), fstar(truncate_bud(F, k), x));
    }
}

TEST(GammaLaws, DecompositionIsAdditiveAndNatural) {
    Gen g(13);
    for (int t = 0; t < 30; ++t) {
        const std::size_t m = static_cast<std::size_t>(g.range(1, 3));
        const DBElement f = g.db(Z, m, 4), h = g.db(Z, m, 4);
        const DBElement sum(f.set, f.series + h.series);
        const auto df = homogeneous_decomposition(f), dh = homogeneous_decomposition(h),
                   ds = homogeneous_decomposition(sum);
        for (unsigned k = 1; k <= 4; ++k)
            for (std::size_t i = 0; i < ds.at(k).coefficients.size(); ++i)
                EXPECT_EQ(ds.at(k).coefficients[i], df.at(k).coefficients[i] + dh.at(k).coefficients[i]);

        // pushing multisets forward along alpha reproduces the decomposition of db_map(alpha, f)
        const PointedMap a = g.map(f.set, PointedSet{static_cast<std::size_t>(g.range(1, 3))});
        const auto dm = homogeneous_decomposition(db_map(a, f));
        for (unsigned k = 1; k <= 4; ++k) {
            std::map<std::vector<std::size_t>, Scalar> pushed;
            const DegreeSlot& slot = df.at(k);
            for (std::size_t i = 0; i < slot.multisets.size(); ++i) {
                std::vector<std::size_t> image;
                bool killed = false;
                for (auto e : slot.multisets[i]) {
                    if (a(e) == 0) killed = true;
                    image.push_back(a(e));
                }
                if (killed) continue;
                std::sort(image.begin(), image.end());
                pushed[image] = pushed[image] + slot.coefficients[i];
            }
            const DegreeSlot& target = dm.at(k);
            for (std::size_t i = 0; i < target.multisets.size(); ++i) {
                auto it = pushed.find(target.multisets[i]);
                EXPECT_EQ(target.coefficients[i], it == pushed.end() ? Scalar(0) : it->second);
            }
        }
    }
}

TEST(GammaLaws, ProductDegreeDependsOnlyOnLowerParts) {
    Gen g(14);
    for (int t = 0; t < 30; ++t) {
        const DBElement f = g.db(Z, 2, 5), h = g.db(Z, 2, 5);
        const unsigned k = static_cast<unsigned>(g.range(1, 4));
        const auto full = homogeneous_decomposition(db_mul(f, h));
        const auto low = homogeneous_decomposition(db_mul(db_truncate(f, k), db_truncate(h, k)));
        for (unsigned d = 1; d <= k; ++d) EXPECT_EQ(full.at(d).coefficients, low.at(d).coefficients);
    }
}

TEST(GammaLaws, ConjugationActsOnDB) {
    Gen g(15);
    const Ring z4 = Ring::integers_mod(4);
    for (int t = 0; t < 20; ++t) {
        const DBElement f = g.db(z4, static_cast<std::size_t>(g.range(1, 3)), 5);
        const StrictIso phi = g.iso(z4, 5), psi = g.iso(z4, 5);
        EXPECT_EQ(db_conjugate(phi, db_conjugate(psi, f)), db_conjugate(compose(phi, psi), f));
    }
}

TEST(GammaLaws, RandomBudFStarSuite) {
    std::mt19937_64 rng(16);
    const FormalGroupBud F = testing_support::random_iterated_bud(Ring::integers_mod(6), 4, rng);
    const CheckReport r = check_fstar_homomorphism(F, 3, 40, 16);
    for (const auto& p : r.properties) EXPECT_EQ(p.failed, 0U) << p.name;
}

// ---- homology

TEST(HomologyLaws, BoundariesComposeToZero) {
    for (std::size_t r = 1; r <= 3; ++r)
        for (std::size_t top = 1; top <= 8; ++top) {
            const IntChainComplex c = build_ctilde(r, top);
            for (std::size_t i = 2; i <= top; ++i) EXPECT_TRUE((c.boundary(i - 1) * c.boundary(i)).is_zero());
        }
}

TEST(HomologyLaws, RandomComplexesHaveConsistentRanks) {
    // two-term complexes: Euler characteristic and torsion against the
    // determinantal-divisor oracle
    std::mt19937_64 rng(17);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n0 = 1 + rng() % 4, n1 = 1 + rng() % 4;
        IntMatrix d1(n0, n1);
        for (std::size_t i = 0; i < n0; ++i)
            for (std::size_t j = 0; j < n1; ++j) d1(i, j) = static_cast<long>(rng() % 5) - 2;
        const IntChainComplex c({n0, n1}, {d1});
        const AbelianGroupIso h0 = homology(c, 0), h1 = homology(c, 1);
        EXPECT_TRUE(h0.is_valid());
        const long euler = static_cast<long>(n0) - static_cast<long>(n1);
        EXPECT_EQ(static_cast<long>(h0.free_rank) - static_cast<long>(h1.free_rank), euler);
        EXPECT_EQ(h0.torsion, [&] {
            std::vector<mpz_class> tors;
            for (const auto& f : oracle::invariant_factors_by_minors(d1))
                if (f > 1) tors.push_back(f);
            return tors;
        }());
    }
}
