#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "fg/fgl.hpp"
#include "fg/ring.hpp"
#include "fg/series.hpp"

namespace fg {

/// The finite pointed set m+ = {0, 1, ..., m} with basepoint 0.
struct PointedSet {
    std::size_t size = 0;
    friend bool operator==(PointedSet, PointedSet) = default;
};

/// A basepoint-preserving map. images[i-1] is the image of element i; an
/// image of 0 sends the element to the basepoint.
struct PointedMap {
    PointedSet source;
    PointedSet target;
    std::vector<std::size_t> images;

    static PointedMap identity(PointedSet k);
    /// Checks images.size() == source.size and every image <= target.size.
    void require_valid() const;
    std::size_t operator()(std::size_t i) const { return i == 0 ? 0 : images.at(i - 1); }
};

/// K ^ L realised as (m*n)+ with (i, j) <-> (i-1)*n + j. With this pairing
/// the associator (K^L)^M = K^(L^M) and the unitors 1+ ^ K = K = K ^ 1+ are
/// identities on indices.
struct SmashProduct {
    PointedSet left, right, set;
    std::size_t index(std::size_t i, std::size_t j) const;
    std::pair<std::size_t, std::size_t> split(std::size_t index) const;
};

SmashProduct smash(PointedSet k, PointedSet l);
/// alpha ^ beta : K ^ L -> K' ^ L'.
PointedMap smash_maps(const PointedMap& alpha, const PointedMap& beta);

/// Value of HZ on a pointed set: an integer combination of non-basepoint
/// elements.
struct HZElement {
    PointedSet set;
    std::vector<mpz_class> coefficients; // coefficients[i-1] belongs to element i

    static HZElement zero(PointedSet k);
    static HZElement generator(PointedSet k, std::size_t i);
    friend bool operator==(const HZElement&, const HZElement&) = default;
};

HZElement hz_map(const PointedMap& alpha, const HZElement& a);
HZElement hz_mul(const HZElement& a, const HZElement& b);

/// Value of DB (or D_N B) on a pointed set: a series without constant term in
/// one variable per non-basepoint element, truncated at degree N.
struct DBElement {
    PointedSet set;
    Series series;

    DBElement(PointedSet k, Series s);
    static DBElement zero(const Ring& ring, PointedSet k, unsigned precision);
    const Ring& ring() const { return series.ring(); }
    unsigned precision() const { return series.precision(); }
    friend bool operator==(const DBElement&, const DBElement&) = default;
};

/// eta: the generator x_i.
DBElement db_unit(const Ring& ring, PointedSet k, std::size_t i, unsigned precision);
/// Substitutes x_i -> x_alpha(i), with x_0 = 0.
DBElement db_map(const PointedMap& alpha, const DBElement& f);
/// mu(f ^ g) = f(g(x_{1,1}, ..., x_{1,n}), ..., g(x_{m,1}, ..., x_{m,n})).
DBElement db_mul(const DBElement& f, const DBElement& g);
DBElement db_truncate(const DBElement& f, unsigned k);
/// phi(f(phi^-1(x_1), ..., phi^-1(x_m))).
DBElement db_conjugate(const StrictIso& phi, const DBElement& f);

/// F_*(a) = sum^F [a_i]_F(x_i) at the bud order; zero for empty support.
DBElement fstar(const FormalGroupBud& F, const HZElement& a);

/// Degree-k part of a DB element as a vector over the size-k multisets of
/// {1..m}, listed as nondecreasing sequences in lexicographic order.
struct DegreeSlot {
    std::vector<std::vector<std::size_t>> multisets;
    std::vector<Scalar> coefficients;
};

/// Slots for every degree 1..precision. Each slot has C(m+k-1, k) entries;
/// this count is checked against the monomial count on construction.
std::map<unsigned, DegreeSlot> homogeneous_decomposition(const DBElement& f);

/// For a = p*e_1 on 1+, whether F_*(a) vanishes below degree p^h. Requires
/// prime characteristic p and bud order >= p^h; cross-checked against the
/// height and throws `internal_consistency` if they disagree.
bool height_factorization_check(const FormalGroupBud& F, unsigned h);

/// One property exercised by a randomized harness.
struct PropertyResult {
    std::string name;
    std::size_t checked = 0;
    std::size_t failed = 0;
    std::vector<std::string> counterexamples; // the first few failures
};

struct CheckReport {
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::vector<PropertyResult> properties;

    bool passed() const;
    std::size_t failures() const;
};

using DbMultiplication = std::function<DBElement(const DBElement&, const DBElement&)>;

/// Associativity, both unit laws and naturality of mu on random elements of
/// random pointed sets of size <= max_set. `mul` defaults to db_mul and can
/// be replaced to test the harness itself.
CheckReport check_gammaring_axioms(const Ring& ring, unsigned precision, std::size_t max_set, std::size_t trials,
                                   std::uint64_t seed, const DbMultiplication& mul = db_mul);

/// Unit, multiplicativity, naturality and conjugation equivariance of F_*,
/// and the monoid law [n]_F o [m]_F = [nm]_F. For the additive law it also
/// checks that every F_* value is linear.
CheckReport check_fstar_homomorphism(const FormalGroupBud& F, std::size_t max_set, std::size_t trials,
                                     std::uint64_t seed);

} // namespace fg
