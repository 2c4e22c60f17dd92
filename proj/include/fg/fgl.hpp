#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>

#include "fg/cocycles.hpp"
#include "fg/ring.hpp"
#include "fg/series.hpp"

namespace fg {

/// First axiom a candidate law violates.
struct BudViolation {
    std::string axiom;    // "identity", "symmetry" or "associativity"
    std::string monomial; // offending monomial, e.g. "x^2"
};

/// Checks F(x,0) = x = F(0,x), F(x,y) = F(y,x) and
/// F(F(x,y),z) = F(x,F(y,z)) to the precision of F.
std::optional<BudViolation> find_bud_violation(const Series& law);

/// A 2-variable truncated series certified to satisfy the formal group law
/// axioms to its precision (an N-bud).
class FormalGroupBud {
public:
    /// Throws `axiom_violation` naming the axiom and monomial, or
    /// `shape_mismatch` if `law` is not a 2-variable series.
    static FormalGroupBud validate(Series law);

    const Series& law() const noexcept { return law_; }
    unsigned order() const noexcept { return law_.precision(); }
    const Ring& ring() const noexcept { return law_.ring(); }

    friend bool operator==(const FormalGroupBud& a, const FormalGroupBud& b) = default;

private:
    explicit FormalGroupBud(Series law) : law_(std::move(law)) {}
    Series law_;
};

FormalGroupBud additive_fgl(const Ring& ring, unsigned precision);
FormalGroupBud multiplicative_fgl(const Ring& ring, unsigned precision);

/// A power series with leading term x (an element of the group of strict
/// automorphisms of the formal line), to a fixed precision.
class StrictIso {
public:
    /// Throws `invalid_argument` unless the coefficient of x is 1.
    static StrictIso from_series(Series phi);
    static StrictIso identity(const Ring& ring, unsigned precision);
    /// x + b x^k.
    static StrictIso elementary(const RingElement& b, unsigned k, unsigned precision);

    const Series& series() const noexcept { return series_; }
    unsigned precision() const noexcept { return series_.precision(); }

    friend bool operator==(const StrictIso& a, const StrictIso& b) = default;

private:
    friend StrictIso compose(const StrictIso&, const StrictIso&);
    friend StrictIso invert(const StrictIso&);
    explicit StrictIso(Series s) : series_(std::move(s)) {}
    Series series_;
};

/// phi o psi.
StrictIso compose(const StrictIso& phi, const StrictIso& psi);
StrictIso invert(const StrictIso& phi);

/// iota with F(x, iota(x)) = 0; linear coefficient -1.
Series formal_inverse(const FormalGroupBud& F);

/// [n]_F for any integer n; [-n]_F = [n]_F o iota.
Series n_series(const FormalGroupBud& F, std::int64_t n);

/// f_1 +_F f_2 +_F ... folded from the left. All summands share one shape
/// with precision equal to the bud order.
Series formal_sum(const FormalGroupBud& F, std::span<const Series> summands);

/// F^phi(x,y) = phi(F(phi^-1(x), phi^-1(y))), so that phi : F -> F^phi is a
/// strict isomorphism.
FormalGroupBud conjugate(const FormalGroupBud& F, const StrictIso& phi);

/// The k-bud underlying F, for 1 <= k < order.
FormalGroupBud truncate_bud(const FormalGroupBud& F, unsigned k);

/// F + c for a cocycle whose degree equals the bud order.
FormalGroupBud add_cocycle(const FormalGroupBud& F, const SymCocycle& c);

/// F - F' for two k-buds with the same (k-1)-bud; throws `bud_mismatch`
/// otherwise.
SymCocycle difference_cocycle(const FormalGroupBud& F, const FormalGroupBud& G);

/// conjugate(F, x + b x^k) for the bud order k, checked against
/// F + theta(-b) = F - b (x^k + y^k - (x+y)^k). Throws
/// `internal_consistency` if the two disagree.
FormalGroupBud bud_isomorphism_step(const FormalGroupBud& F, const RingElement& b);

struct HeightFinite {
    unsigned height;
    RingElement unit; // coefficient of x^(p^h) in [p]_F
};
struct HeightAtLeast {
    unsigned bound; // [p]_F vanishes through this degree
};
using HeightResult = std::variant<HeightFinite, HeightAtLeast>;

/// Height of F over a ring of prime characteristic p, read off [p]_F
/// through degree `bound` (which may not exceed the bud order).
/// Throws `wrong_ring` without prime characteristic and `invalid_fgl` if the
/// lowest term of [p]_F is not in a degree p^h.
HeightResult height(const FormalGroupBud& F, unsigned bound);

/// The strict isomorphism l with conjugate(F, l) = x + y, computed as the
/// antiderivative of 1 / (dF/dy)(x, 0). Throws `needs_q_algebra` when an
/// integer division is impossible in the ring.
StrictIso logarithm(const FormalGroupBud& F);

} // namespace fg
