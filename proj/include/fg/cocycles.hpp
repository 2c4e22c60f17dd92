#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "fg/ring.hpp"
#include "fg/series.hpp"

namespace fg {

inline constexpr std::uint64_t default_enumeration_budget = 10'000'000;

/// Outcome of checking the symmetric 2-cocycle identities.
struct CocycleCheck {
    bool holds = true;
    std::string failed_relation; // "symmetry" or "cocycle"
    std::string monomial;        // first offending monomial

    explicit operator bool() const noexcept { return holds; }
};

/// c(x,y) = c(y,x) and c(x,y) + c(x+y,z) = c(x,y+z) + c(y,z), exactly.
/// Throws `shape_mismatch` unless c is a 2-variable series whose terms all
/// have degree k (and whose precision is at least k).
CocycleCheck is_symmetric_cocycle(const Series& c, unsigned k);

/// A certified homogeneous symmetric 2-cocycle of degree k >= 2, stored as a
/// 2-variable series at precision k.
class SymCocycle {
public:
    /// Throws `shape_mismatch` on bad shape, `axiom_violation` if the
    /// identities fail.
    static SymCocycle certify(const Series& c, unsigned k);
    static SymCocycle zero(const Ring& ring, unsigned k);
    /// c = sum_i a_i x^i y^(k-i) from the coefficients a_1..a_(k-1).
    static SymCocycle from_coefficients(const Ring& ring, unsigned k, const std::vector<Scalar>& a);

    unsigned degree() const noexcept { return degree_; }
    const Ring& ring() const noexcept { return series_.ring(); }
    const Series& series() const noexcept { return series_; }
    /// a_1..a_(k-1), where a_i is the coefficient of x^i y^(k-i).
    std::vector<Scalar> coefficients() const;

    friend SymCocycle operator+(const SymCocycle& a, const SymCocycle& b);
    friend bool operator==(const SymCocycle& a, const SymCocycle& b) = default;

private:
    SymCocycle(unsigned k, Series s) : degree_(k), series_(std::move(s)) {}

    unsigned degree_;
    Series series_;
};

/// gcd of C(k, i) for 1 <= i <= k-1.
mpz_class binomial_gcd(unsigned k);

/// Lazard's c_k = (x^k + y^k - (x+y)^k) / d_k mapped into the ring.
SymCocycle universal_cocycle(unsigned k, const Ring& ring);

/// theta(b) = b * (x^k + y^k - (x+y)^k).
SymCocycle principal_cocycle(const RingElement& b, unsigned k);

/// All degree-k symmetric 2-cocycles over a finite ring, found by brute
/// force over the free coefficients a_1..a_(k/2) (a_(k-i) = a_i), sorted by
/// coefficient vector. The result is compared against {b * c_k : b in B};
/// a mismatch throws `internal_consistency` with the counterexample.
/// Throws `too_large` if |B|^floor(k/2) exceeds the budget.
std::vector<SymCocycle> classify_cocycles(const Ring& ring, unsigned k,
                                          std::uint64_t budget = default_enumeration_budget);

/// Invariants of the groupoid of degree-k cocycles with principal
/// translations as morphisms.
struct GroupoidInvariants {
    std::uint64_t cocycle_count = 0;
    std::uint64_t image_size = 0;     // |theta(B)|
    std::uint64_t pi0_size = 0;       // number of orbits
    std::uint64_t stabilizer_size = 0; // |ker theta|
};

/// Computes the invariants by enumeration and cross-checks them against the
/// closed forms (B/pB and {b : pb = 0} for k = p^h, a single orbit
/// otherwise); a disagreement throws `internal_consistency`.
GroupoidInvariants groupoid_invariants(const Ring& ring, unsigned k,
                                       std::uint64_t budget = default_enumeration_budget);

/// The prime p if k = p^h with h >= 1.
std::optional<unsigned> prime_power_base(unsigned k);

} // namespace fg
