#include <map>

#include "fg/cocycles.hpp"
#include "fg/error.hpp"
#include "fg/homology.hpp"

namespace fg {

namespace {

using Exps = std::vector<unsigned>;

// Degree-k exponent vectors in descending lexicographic order.
void monomials(std::size_t r, unsigned k, Exps& current, std::vector<Exps>& out) {
    if (current.size() + 1 == r) {
        current.push_back(k);
        out.push_back(current);
        current.pop_back();
        return;
    }
    for (unsigned e = k + 1; e-- > 0;) {
        current.push_back(e);
        monomials(r, k - e, current, out);
        current.pop_back();
    }
}

std::vector<Exps> sym_basis(std::size_t r, unsigned k) {
    std::vector<Exps> out;
    Exps current;
    if (r > 0) monomials(r, k, current, out);
    return out;
}

std::string monomial_name(const Exps& e) {
    std::string out;
    for (std::size_t j = 0; j < e.size(); ++j) {
        if (e[j] == 0) continue;
        if (!out.empty()) out += "*";
        out += "x" + std::to_string(j + 1);
        if (e[j] > 1) out += "^" + std::to_string(e[j]);
    }
    return out.empty() ? "1" : out;
}

mpz_class binomial(unsigned n, unsigned k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

} // namespace

std::string functor_name(FunctorTag tag, unsigned k) {
    switch (tag) {
    case FunctorTag::sym: return "Sym(" + std::to_string(k) + ")";
    case FunctorTag::lambda2: return "Lambda2";
    case FunctorTag::tensor_square: return "TensorSquare";
    }
    return {};
}

FunctorValue evaluate_functor(FunctorTag tag, std::size_t rank, unsigned k) {
    FunctorValue v{tag, tag == FunctorTag::sym ? k : 2U, rank, {}};
    switch (tag) {
    case FunctorTag::sym:
        if (k < 1) fail(Errc::invalid_argument, "Sym(k) needs k >= 1");
        v.basis = sym_basis(rank, k);
        break;
    case FunctorTag::lambda2:
        for (unsigned a = 0; a < rank; ++a)
            for (unsigned b = a + 1; b < rank; ++b) v.basis.push_back({a, b});
        break;
    case FunctorTag::tensor_square:
        for (unsigned a = 0; a < rank; ++a)
            for (unsigned b = 0; b < rank; ++b) v.basis.push_back({a, b});
        break;
    }
    return v;
}

ComultCheck comult_binomial_check(unsigned k, unsigned i, std::size_t r) {
    if (i < 1 || i >= k) fail(Errc::invalid_argument, "need 1 <= i <= k-1");
    if (r < 1) fail(Errc::invalid_argument, "need rank r >= 1");
    const std::vector<Exps> source = sym_basis(r, k), left = sym_basis(r, i), right = sym_basis(r, k - i);
    std::map<Exps, std::size_t> source_index, left_index, right_index;
    for (std::size_t s = 0; s < source.size(); ++s) source_index[source[s]] = s;
    for (std::size_t s = 0; s < left.size(); ++s) left_index[left[s]] = s;
    for (std::size_t s = 0; s < right.size(); ++s) right_index[right[s]] = s;
    const std::size_t target_dim = left.size() * right.size();

    IntMatrix delta(target_dim, source.size());
    for (std::size_t col = 0; col < source.size(); ++col) {
        const Exps& alpha = source[col];
        std::vector<unsigned> word;
        for (unsigned v = 0; v < r; ++v) word.insert(word.end(), alpha[v], v);
        // i-element subsets T of positions as bitmasks
        for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
            if (static_cast<unsigned>(__builtin_popcount(mask)) != i) continue;
            Exps beta(r, 0), gamma(r, 0);
            for (unsigned pos = 0; pos < k; ++pos) ++((mask >> pos) & 1U ? beta : gamma)[word[pos]];
            delta(left_index.at(beta) * right.size() + right_index.at(gamma), col) += 1;
        }
    }

    IntMatrix product(source.size(), target_dim);
    for (std::size_t b = 0; b < left.size(); ++b)
        for (std::size_t g = 0; g < right.size(); ++g) {
            Exps sum(r);
            for (std::size_t v = 0; v < r; ++v) sum[v] = left[b][v] + right[g][v];
            product(source_index.at(sum), b * right.size() + g) += 1;
        }

    ComultCheck out;
    out.binomial = binomial(k, i);
    out.composite = product * delta;
    out.holds = true;
    for (std::size_t a = 0; a < source.size() && out.holds; ++a)
        for (std::size_t b = 0; b < source.size(); ++b)
            if (out.composite(b, a) != (a == b ? out.binomial : mpz_class(0))) {
                out.holds = false;
                out.counterexample = monomial_name(source[a]);
                break;
            }
    return out;
}

std::vector<mpz_class> dk_factorization_witness(unsigned k) {
    if (k < 2) fail(Errc::invalid_argument, "d_k is defined for k >= 2");
    std::vector<mpz_class> lambda;
    mpz_class g = 0;
    for (unsigned i = 1; i < k; ++i) {
        const mpz_class c = binomial(k, i);
        mpz_class next, s, t;
        mpz_gcdext(next.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        for (auto& l : lambda) l *= s;
        lambda.push_back(t);
        g = next;
    }
    mpz_class sum = 0;
    for (unsigned i = 1; i < k; ++i) sum += lambda[i - 1] * binomial(k, i);
    if (sum != binomial_gcd(k) || g != sum)
        fail(Errc::internal_consistency, "extended gcd witness does not sum to d_k");
    return lambda;
}

} // namespace fg
