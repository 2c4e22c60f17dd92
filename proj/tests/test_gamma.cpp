#include <gtest/gtest.h>

#include "fg/gamma.hpp"
#include "oracles.hpp"

using namespace fg;
using oracle::error_code;
using oracle::make_series;

namespace {

const Ring Z = Ring::integers();
const Ring Z4 = Ring::integers_mod(4);

DBElement db(const Ring& r, std::size_t m, unsigned N, const oracle::Terms& terms) {
    return DBElement(PointedSet{m}, make_series(r, m, N, terms));
}

} // namespace

TEST(Smash, IndexPairing) {
    const SmashProduct s = smash(PointedSet{2}, PointedSet{3});
    EXPECT_EQ(s.set.size, 6U);
    EXPECT_EQ(s.index(1, 1), 1U);
    EXPECT_EQ(s.index(1, 3), 3U);
    EXPECT_EQ(s.index(2, 1), 4U);
    EXPECT_EQ(s.index(2, 0), 0U);
    for (std::size_t i = 1; i <= 2; ++i)
        for (std::size_t j = 1; j <= 3; ++j) EXPECT_EQ(s.split(s.index(i, j)), std::make_pair(i, j));
    const SmashProduct unit = smash(PointedSet{4}, PointedSet{1});
    for (std::size_t i = 1; i <= 4; ++i) EXPECT_EQ(unit.index(i, 1), i);
    EXPECT_EQ(smash(PointedSet{0}, PointedSet{5}).set.size, 0U);
}

TEST(Smash, AssociatorIsTheIdentity) {
    const PointedSet K{2}, L{3}, M{2};
    const SmashProduct kl = smash(K, L), lm = smash(L, M);
    const SmashProduct left = smash(kl.set, M), right = smash(K, lm.set);
    for (std::size_t i = 1; i <= 2; ++i)
        for (std::size_t j = 1; j <= 3; ++j)
            for (std::size_t k = 1; k <= 2; ++k)
                EXPECT_EQ(left.index(kl.index(i, j), k), right.index(i, lm.index(j, k)));
}

TEST(HZ, Operations) {
    HZElement a = HZElement::zero(PointedSet{1});
    a.coefficients[0] = 2;
    HZElement b = HZElement::zero(PointedSet{1});
    b.coefficients[0] = 3;
    EXPECT_EQ(hz_mul(a, b).coefficients, std::vector<mpz_class>{6});

    const PointedMap fold{PointedSet{2}, PointedSet{1}, {1, 1}};
    HZElement e12 = HZElement::zero(PointedSet{2});
    e12.coefficients = {1, 1};
    EXPECT_EQ(hz_map(fold, e12).coefficients, std::vector<mpz_class>{2});

    const PointedMap collapse{PointedSet{2}, PointedSet{3}, {0, 0}};
    EXPECT_EQ(hz_map(collapse, e12), HZElement::zero(PointedSet{3}));
    EXPECT_EQ(error_code([&] { (void)hz_map(fold, a); }), Errc::shape_mismatch);
    EXPECT_EQ(error_code([] { (void)PointedMap{PointedSet{1}, PointedSet{1}, {2}}.require_valid(); }),
              Errc::shape_mismatch);
}

TEST(DB, UnitAndMaps) {
    EXPECT_EQ(db_unit(Z, PointedSet{1}, 1, 4).series.to_string(), "x");
    EXPECT_EQ(db_unit(Z, PointedSet{3}, 2, 4).series.to_string(), "y");
    EXPECT_EQ(error_code([] { (void)db_unit(Z, PointedSet{3}, 4, 4); }), Errc::invalid_argument);
    EXPECT_EQ(error_code([] { (void)db_unit(Z, PointedSet{3}, 0, 4); }), Errc::invalid_argument);

    const DBElement f = db(Z, 2, 4, {{{1, 1}, 1}, {{0, 2}, 3}});
    EXPECT_EQ(db_map(PointedMap::identity(PointedSet{2}), f), f);
    EXPECT_TRUE(db_map(PointedMap{PointedSet{2}, PointedSet{2}, {0, 0}}, db(Z, 2, 4, {{{1, 1}, 1}})).series.is_zero());
    const PointedMap fold{PointedSet{2}, PointedSet{1}, {1, 1}};
    EXPECT_EQ(db_map(fold, db(Z, 2, 4, {{{1, 0}, 1}, {{0, 1}, 1}})).series.to_string(), "2*x");
    EXPECT_EQ(db_map(fold, f).series.to_string(), "4*x^2");
    const PointedMap swap{PointedSet{2}, PointedSet{2}, {2, 1}};
    EXPECT_EQ(db_map(swap, f).series.to_string(), "3*x^2 + x*y");
    const PointedMap to_empty{PointedSet{2}, PointedSet{0}, {0, 0}};
    EXPECT_EQ(db_map(to_empty, f).set.size, 0U);
}

TEST(DB, Multiplication) {
    const DBElement x = db_unit(Z, PointedSet{1}, 1, 3);
    const DBElement g = db(Z, 2, 3, {{{1, 1}, 2}, {{0, 3}, 1}});
    EXPECT_EQ(db_mul(x, g), g);
    EXPECT_EQ(db_mul(g, x), g);
    EXPECT_EQ(db_mul(db(Z, 1, 3, {{{2}, 1}}), x).series.to_string(), "x^2");
    EXPECT_EQ(db_mul(db(Z, 2, 3, {{{1, 0}, 1}, {{0, 1}, 1}}), x).series.to_string(), "x + y");

    // f = x1 x2 on 2+, g = x + x^2 on 1+: (x1 + x1^2)(x2 + x2^2)
    const DBElement p = db_mul(db(Z, 2, 4, {{{1, 1}, 1}}), db(Z, 1, 4, {{{1}, 1}, {{2}, 1}}));
    EXPECT_EQ(p.series.to_string(), "x*y + x^2*y + x*y^2 + x^2*y^2");

    // f = x on 1+, g = y1 + y2 on 2+: g reindexed in 1+ ^ 2+ = 2+
    const DBElement s = db_mul(db(Z, 2, 4, {{{1, 0}, 1}, {{0, 1}, 1}}), db(Z, 2, 4, {{{1, 0}, 1}, {{0, 1}, 1}}));
    EXPECT_EQ(s.set.size, 4U);
    EXPECT_EQ(s.series.to_string(), "x1 + x2 + x3 + x4");

    const DBElement empty = DBElement::zero(Z, PointedSet{0}, 3);
    EXPECT_EQ(db_mul(empty, g).set.size, 0U);
    EXPECT_EQ(db_mul(g, empty).set.size, 0U);
    EXPECT_EQ(error_code([&] { (void)db_mul(g, db_unit(Z, PointedSet{1}, 1, 4)); }), Errc::shape_mismatch);
}

TEST(DB, Conjugation) {
    const StrictIso id = StrictIso::identity(Z, 4);
    const DBElement f = db(Z, 2, 4, {{{1, 1}, 1}, {{2, 0}, 3}});
    EXPECT_EQ(db_conjugate(id, f), f);
    const StrictIso phi = StrictIso::from_series(make_series(Z, 1, 2, {{{1}, 1}, {{2}, 1}}));
    EXPECT_EQ(db_conjugate(phi, db_unit(Z, PointedSet{1}, 1, 2)), db_unit(Z, PointedSet{1}, 1, 2));
    const StrictIso psi = StrictIso::from_series(make_series(Z, 1, 4, {{{1}, 1}, {{3}, 2}}));
    const StrictIso chi = StrictIso::from_series(make_series(Z, 1, 4, {{{1}, 1}, {{2}, -1}, {{4}, 1}}));
    EXPECT_EQ(db_conjugate(psi, db_conjugate(chi, f)), db_conjugate(compose(psi, chi), f));
}

TEST(FStar, Examples) {
    HZElement e12 = HZElement::zero(PointedSet{2});
    e12.coefficients = {1, 1};
    EXPECT_EQ(fstar(multiplicative_fgl(Z, 4), e12).series.to_string(), "x + y + x*y");
    HZElement a = HZElement::zero(PointedSet{3});
    a.coefficients = {2, -1, 5};
    EXPECT_EQ(fstar(additive_fgl(Z, 4), a).series.to_string(), "2*x - y + 5*z");
    HZElement two = HZElement::zero(PointedSet{1});
    two.coefficients = {2};
    EXPECT_EQ(fstar(multiplicative_fgl(Z, 2), two).series.to_string(), "2*x + x^2");
    EXPECT_TRUE(fstar(multiplicative_fgl(Z, 4), HZElement::zero(PointedSet{3})).series.is_zero());
    EXPECT_EQ(fstar(multiplicative_fgl(Z, 4), HZElement::zero(PointedSet{0})).set.size, 0U);
}

TEST(Decomposition, Slots) {
    const auto slots = homogeneous_decomposition(db(Z, 2, 3, {{{1, 1}, 1}}));
    ASSERT_EQ(slots.size(), 3U);
    const DegreeSlot& two = slots.at(2);
    ASSERT_EQ(two.multisets.size(), 3U);
    EXPECT_EQ(two.multisets[0], (std::vector<std::size_t>{1, 1}));
    EXPECT_EQ(two.multisets[1], (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(two.coefficients[1], Scalar(1));
    EXPECT_TRUE(two.coefficients[0].is_zero());
    EXPECT_EQ(slots.at(3).multisets.size(), 4U);
    EXPECT_EQ(homogeneous_decomposition(DBElement::zero(Z, PointedSet{0}, 3)).at(2).multisets.size(), 0U);
}

TEST(Decomposition, DimensionsAreBinomial) {
    for (std::size_t m = 0; m <= 4; ++m)
        for (unsigned k = 1; k <= 6; ++k) {
            const auto slots = homogeneous_decomposition(DBElement::zero(Z, PointedSet{m}, 6));
            const mpz_class expected = m == 0 ? mpz_class(0) : oracle::binomial(static_cast<long>(m + k - 1), k);
            EXPECT_EQ(mpz_class(static_cast<unsigned long>(slots.at(k).multisets.size())), expected);
        }
}

TEST(HeightFactorization, Examples) {
    const Ring z2 = Ring::integers_mod(2), z3 = Ring::integers_mod(3);
    EXPECT_TRUE(height_factorization_check(multiplicative_fgl(z2, 4), 1));
    EXPECT_FALSE(height_factorization_check(multiplicative_fgl(z2, 4), 2));
    EXPECT_TRUE(height_factorization_check(additive_fgl(z3, 9), 1));
    EXPECT_TRUE(height_factorization_check(additive_fgl(z3, 9), 2));
    EXPECT_EQ(error_code([&] { (void)height_factorization_check(multiplicative_fgl(z2, 3), 2); }),
              Errc::invalid_argument);
    EXPECT_EQ(error_code([] { (void)height_factorization_check(multiplicative_fgl(Z4, 4), 1); }), Errc::wrong_ring);
}

TEST(Harness, CleanRunsPass) {
    const CheckReport empty = check_gammaring_axioms(Z4, 6, 3, 0, 1);
    EXPECT_TRUE(empty.passed());
    for (const auto& p : empty.properties) EXPECT_EQ(p.checked, 0U);

    const CheckReport r = check_gammaring_axioms(Z4, 4, 2, 10, 9);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.properties.size(), 5U);
    const CheckReport again = check_gammaring_axioms(Z4, 4, 2, 10, 9);
    for (std::size_t i = 0; i < r.properties.size(); ++i) EXPECT_EQ(r.properties[i].checked, again.properties[i].checked);
}

TEST(Harness, PlantedFaultIsCaught) {
    // flips the coefficient of the first term of every product
    const DbMultiplication corrupted = [](const DBElement& f, const DBElement& g) {
        DBElement p = db_mul(f, g);
        if (!p.series.is_zero()) p.series.add_term(p.series.terms().begin()->first, Scalar(1));
        return p;
    };
    const CheckReport r = check_gammaring_axioms(Z4, 4, 2, 30, 3, corrupted);
    EXPECT_FALSE(r.passed());
    bool reported = false;
    for (const auto& p : r.properties)
        if (p.failed > 0) {
            EXPECT_FALSE(p.counterexamples.empty());
            reported = true;
        }
    EXPECT_TRUE(reported);
}

TEST(Harness, FStarSuite) {
    const CheckReport add = check_fstar_homomorphism(additive_fgl(Z4, 4), 2, 15, 4);
    EXPECT_TRUE(add.passed());
    EXPECT_EQ(add.properties.back().name, "additive_linearity");
    EXPECT_TRUE(check_fstar_homomorphism(multiplicative_fgl(Z4, 4), 2, 15, 4).passed());
}
