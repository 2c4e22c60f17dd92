#include "fg/homology.hpp"

#include <algorithm>
#include <utility>

#include "fg/error.hpp"

namespace fg {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<mpz_class>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) fail(Errc::shape_mismatch, "matrix rows have different lengths");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const mpz_class& v) { return v == 0; });
}

std::string IntMatrix::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < cols_; ++j) out += (j ? ", " : "") + (*this)(i, j).get_str();
        out += "]";
    }
    return out + "]";
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_)
        fail(Errc::shape_mismatch, "cannot multiply " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                                       " by " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t l = 0; l < a.cols_; ++l) {
            const mpz_class& x = a(i, l);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(l, j);
        }
    return c;
}

mpz_class determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) fail(Errc::shape_mismatch, "determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    mpz_class sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m(swap, k) == 0) ++swap;
            if (swap == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

namespace {

// Elementary operations applied to D together with the transform that
// records them: rows of D and U, columns of D and V.
struct Reducer {
    IntMatrix& D;
    IntMatrix& U;
    IntMatrix& V;

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < D.cols(); ++j) std::swap(D(a, j), D(b, j));
        for (std::size_t j = 0; j < U.cols(); ++j) std::swap(U(a, j), U(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < D.rows(); ++i) std::swap(D(i, a), D(i, b));
        for (std::size_t i = 0; i < V.rows(); ++i) std::swap(V(i, a), V(i, b));
    }
    // row target += q * row source
    void add_row(std::size_t target, std::size_t source, const mpz_class& q) {
        for (std::size_t j = 0; j < D.cols(); ++j) D(target, j) += q * D(source, j);
        for (std::size_t j = 0; j < U.cols(); ++j) U(target, j) += q * U(source, j);
    }
    void add_col(std::size_t target, std::size_t source, const mpz_class& q) {
        for (std::size_t i = 0; i < D.rows(); ++i) D(i, target) += q * D(i, source);
        for (std::size_t i = 0; i < V.rows(); ++i) V(i, target) += q * V(i, source);
    }
    void negate_row(std::size_t r) {
        for (std::size_t j = 0; j < D.cols(); ++j) D(r, j) = -D(r, j);
        for (std::size_t j = 0; j < U.cols(); ++j) U(r, j) = -U(r, j);
    }
};

} // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    SmithForm out{IntMatrix::identity(m), a, IntMatrix::identity(n), {}};
    Reducer red{out.D, out.U, out.V};
    IntMatrix& D = out.D;

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        while (true) {
            // smallest nonzero |entry| in the trailing block
            std::size_t pr = m, pc = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (D(i, j) != 0 && (pr == m || mpz_cmpabs(D(i, j).get_mpz_t(), D(pr, pc).get_mpz_t()) < 0)) pr = i, pc = j;
            if (pr == m) break;
            red.swap_rows(t, pr);
            red.swap_cols(t, pc);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
                red.add_row(i, t, -q);
                if (D(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
                red.add_col(j, t, -q);
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // the pivot must divide the whole trailing block
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            red.add_row(t, bad, 1);
        }
        if (D(t, t) == 0) break;
        if (D(t, t) < 0) red.negate_row(t);
        out.invariants.push_back(D(t, t));
    }

    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && D(i, j) != 0) fail(Errc::internal_consistency, "Smith form is not diagonal");
    for (std::size_t i = 1; i < out.invariants.size(); ++i)
        if (!mpz_divisible_p(out.invariants[i].get_mpz_t(), out.invariants[i - 1].get_mpz_t()))
            fail(Errc::internal_consistency, "Smith form breaks the divisibility chain");
    if (!(out.U * a * out.V == D)) fail(Errc::internal_consistency, "Smith transforms do not reproduce D");
    return out;
}

bool AbelianGroupIso::is_valid() const {
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        if (torsion[i] < 2) return false;
        if (i > 0 && !mpz_divisible_p(torsion[i].get_mpz_t(), torsion[i - 1].get_mpz_t())) return false;
    }
    return true;
}

std::string AbelianGroupIso::to_string() const {
    if (is_trivial()) return "0";
    std::string out;
    if (free_rank == 1) out = "Z";
    else if (free_rank > 1) out = "Z^" + std::to_string(free_rank);
    for (const auto& t : torsion) out += (out.empty() ? "Z/" : " + Z/") + t.get_str();
    return out;
}

IntChainComplex::IntChainComplex(std::vector<std::size_t> dims, std::vector<IntMatrix> boundaries)
    : dims_(std::move(dims)), boundaries_(std::move(boundaries)) {
    if (dims_.empty()) fail(Errc::shape_mismatch, "a chain complex needs at least degree 0");
    if (boundaries_.size() != dims_.size() - 1)
        fail(Errc::shape_mismatch, "expected " + std::to_string(dims_.size() - 1) + " boundary maps, got " +
                                       std::to_string(boundaries_.size()));
    for (std::size_t i = 1; i < dims_.size(); ++i) {
        const IntMatrix& d = boundaries_[i - 1];
        if (d.rows() != dims_[i - 1] || d.cols() != dims_[i])
            fail(Errc::shape_mismatch, "d_" + std::to_string(i) + " is " + std::to_string(d.rows()) + "x" +
                                           std::to_string(d.cols()) + ", expected " +
                                           std::to_string(dims_[i - 1]) + "x" + std::to_string(dims_[i]));
    }
    for (std::size_t i = 2; i < dims_.size(); ++i)
        if (!(boundaries_[i - 2] * boundaries_[i - 1]).is_zero())
            fail(Errc::not_a_complex, "d_" + std::to_string(i - 1) + " * d_" + std::to_string(i) + " is nonzero");
}

IntMatrix IntChainComplex::boundary(std::size_t i) const {
    if (i >= 1 && i <= top()) return boundaries_[i - 1];
    const std::size_t src = i <= top() ? dims_[i] : 0;
    const std::size_t dst = i >= 1 && i - 1 <= top() ? dims_[i - 1] : 0;
    return IntMatrix(dst, src);
}

AbelianGroupIso homology(const IntChainComplex& c, std::size_t i) {
    if (i > c.top())
        fail(Errc::invalid_argument, "degree " + std::to_string(i) + " above the top degree " +
                                         std::to_string(c.top()));
    const SmithForm out = smith_normal_form(c.boundary(i));
    const SmithForm in = smith_normal_form(c.boundary(i + 1));
    AbelianGroupIso h;
    h.free_rank = c.dims()[i] - out.rank() - in.rank();
    for (const auto& t : in.invariants)
        if (t > 1) h.torsion.push_back(t);
    return h;
}

IntChainComplex build_ctilde(std::size_t r, std::size_t top) {
    if (r < 1 || top < 1) fail(Errc::invalid_argument, "build_ctilde needs r >= 1 and top >= 1");
    const std::size_t pairs = r * (r - 1) / 2, tensors = r * r;
    auto pair_index = [r](std::size_t a, std::size_t b) { return a * (2 * r - a - 1) / 2 + (b - a - 1); };

    std::vector<std::size_t> dims{pairs};
    std::vector<IntMatrix> d;
    for (std::size_t i = 1; i <= top; ++i) {
        dims.push_back(tensors);
        IntMatrix m(i == 1 ? pairs : tensors, tensors);
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b) {
                const std::size_t col = a * r + b;
                if (i == 1) {
                    if (a < b) m(pair_index(a, b), col) += 1;
                    else if (a > b) m(pair_index(b, a), col) -= 1;
                } else {
                    m(col, col) += 1;
                    m(b * r + a, col) += i % 2 == 0 ? 1 : -1;
                }
            }
        d.push_back(std::move(m));
    }
    return IntChainComplex(std::move(dims), std::move(d));
}

AbelianGroupIso stable_derived_lambda2(std::size_t i, std::size_t r, std::size_t top) {
    if (top < i + 1)
        fail(Errc::insufficient_truncation, "degree " + std::to_string(i) + " needs top >= " +
                                                std::to_string(i + 1) + ", got " + std::to_string(top));
    return homology(build_ctilde(r, top), i);
}

} // namespace fg
