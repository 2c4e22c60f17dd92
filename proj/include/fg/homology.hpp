#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace fg {

/// Dense integer matrix, row-major, arbitrary precision entries.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    static IntMatrix identity(std::size_t n);
    /// Rows given as nested lists; all rows must have equal length.
    static IntMatrix from_rows(const std::vector<std::vector<mpz_class>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    mpz_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const mpz_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const;
    std::string to_string() const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<mpz_class> data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
mpz_class determinant(const IntMatrix& a);

struct SmithForm {
    IntMatrix U, D, V;        // U * A * V = D
    std::vector<mpz_class> invariants; // nonzero diagonal entries d_1 | d_2 | ...
    std::size_t rank() const noexcept { return invariants.size(); }
};

/// Smith normal form by elementary row and column operations. Pivots are the
/// entries of smallest nonzero absolute value, ties going to the lowest row
/// and then the lowest column. Diagonal entries are made nonnegative. The
/// identity U*A*V = D and the divisibility chain are verified before
/// returning.
SmithForm smith_normal_form(const IntMatrix& a);

/// A finitely generated abelian group Z^free + Z/t_1 + ... with t_1 | t_2 | ...
struct AbelianGroupIso {
    std::size_t free_rank = 0;
    std::vector<mpz_class> torsion;

    bool is_trivial() const noexcept { return free_rank == 0 && torsion.empty(); }
    /// Every factor >= 2 and the divisibility chain holds.
    bool is_valid() const;
    /// "0", "Z", "Z^2 + Z/2 + Z/2", ...
    std::string to_string() const;
    friend bool operator==(const AbelianGroupIso&, const AbelianGroupIso&) = default;
};

/// Chain complex C_0 <- C_1 <- ... <- C_top of free abelian groups.
/// boundaries[i-1] is d_i : C_i -> C_(i-1), a dims[i-1] x dims[i] matrix.
class IntChainComplex {
public:
    /// Throws `shape_mismatch` for inconsistent shapes and `not_a_complex`
    /// when some d_(i-1) * d_i is nonzero.
    IntChainComplex(std::vector<std::size_t> dims, std::vector<IntMatrix> boundaries);

    std::size_t top() const noexcept { return dims_.size() - 1; }
    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    /// d_i; out-of-range degrees give the zero map.
    IntMatrix boundary(std::size_t i) const;

private:
    std::vector<std::size_t> dims_;
    std::vector<IntMatrix> boundaries_;
};

/// ker d_i / im d_(i+1) for 0 <= i <= top.
AbelianGroupIso homology(const IntChainComplex& c, std::size_t i);

/// The complex with C_0 = Lambda^2(Z^r), C_i = Z^r (x) Z^r for i > 0,
/// d_1(x (x) y) = x ^ y and d_i(x (x) y) = x (x) y +- y (x) x, plus for even
/// i and minus for odd i >= 3. Lambda^2 is based on pairs a < b in
/// lexicographic order; e_a (x) e_b has index a*r + b.
IntChainComplex build_ctilde(std::size_t r, std::size_t top);

/// H_i of build_ctilde(r, top). Throws `insufficient_truncation` unless
/// top >= i + 1.
AbelianGroupIso stable_derived_lambda2(std::size_t i, std::size_t r, std::size_t top);

enum class FunctorTag { sym, lambda2, tensor_square };

/// A polynomial functor evaluated on Z^r. Basis entries are exponent vectors
/// for Sym(k) (degree k, graded-lex order), pairs (a, b) with a < b for
/// Lambda2, and ordered pairs with index a*r + b for TensorSquare.
struct FunctorValue {
    FunctorTag tag;
    unsigned k = 0; // degree; 2 for Lambda2 and TensorSquare
    std::size_t rank = 0;
    std::vector<std::vector<unsigned>> basis;
    std::size_t dimension() const noexcept { return basis.size(); }
};

FunctorValue evaluate_functor(FunctorTag tag, std::size_t rank, unsigned k = 2);
std::string functor_name(FunctorTag tag, unsigned k);

struct ComultCheck {
    bool holds = false;
    mpz_class binomial;       // C(k, i)
    IntMatrix composite;      // product o Delta on the Sym(k) basis
    std::optional<std::string> counterexample; // first monomial where it fails
};

/// Builds Delta_(i,k-i) : S^k -> S^i (x) S^(k-i) on Z^r by summing over the
/// i-element position subsets of each monomial, composes with the product
/// and compares the result with C(k,i) * identity.
ComultCheck comult_binomial_check(unsigned k, unsigned i, std::size_t r);

/// Integers lambda_1..lambda_(k-1) with sum lambda_i C(k,i) = d_k, from
/// iterated extended gcds. The identity is asserted before returning.
std::vector<mpz_class> dk_factorization_witness(unsigned k);

} // namespace fg
