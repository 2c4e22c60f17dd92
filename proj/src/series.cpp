#include "fg/series.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "fg/error.hpp"

namespace fg {

MultiIndex::MultiIndex(std::vector<Exponent> exponents)
    : exponents_(std::move(exponents)),
      degree_(std::accumulate(exponents_.begin(), exponents_.end(), 0U)) {}

MultiIndex MultiIndex::unit(std::size_t vars, std::size_t var, Exponent power) {
    std::vector<Exponent> e(vars, 0);
    e.at(var) = power;
    return MultiIndex(std::move(e));
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r;
    r.exponents_.resize(a.exponents_.size());
    for (std::size_t i = 0; i < a.exponents_.size(); ++i)
        r.exponents_[i] = static_cast<Exponent>(a.exponents_[i] + b.exponents_[i]);
    r.degree_ = a.degree_ + b.degree_;
    return r;
}

bool GradedLex::operator()(const MultiIndex& a, const MultiIndex& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.exponents() > b.exponents();
}

std::string format_monomial(const MultiIndex& m) {
    static constexpr const char* small_names[] = {"x", "y", "z"};
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += m.size() <= 3 ? std::string(small_names[i]) : "x" + std::to_string(i + 1);
        if (m[i] > 1) out += "^" + std::to_string(m[i]);
    }
    return out.empty() ? "1" : out;
}

Series::Series(Ring ring, std::size_t vars, unsigned precision)
    : ring_(std::move(ring)), vars_(vars), precision_(precision) {
    if (precision_ == 0) fail(Errc::invalid_argument, "series precision must be positive");
}

Series Series::variable(const Ring& ring, std::size_t vars, unsigned precision, std::size_t var) {
    if (var >= vars)
        fail(Errc::invalid_argument, "variable index " + std::to_string(var) + " out of range");
    Series s(ring, vars, precision);
    s.add_term(MultiIndex::unit(vars, var), Scalar(1));
    return s;
}

Series Series::monomial(const Ring& ring, unsigned precision, const MultiIndex& m, const Scalar& coef) {
    Series s(ring, m.size(), precision);
    s.add_term(m, coef);
    return s;
}

Series Series::univariate(const Ring& ring, unsigned precision, const std::vector<Scalar>& coefs) {
    Series s(ring, 1, precision);
    for (std::size_t i = 0; i < coefs.size(); ++i)
        s.add_term(MultiIndex{static_cast<Exponent>(i + 1)}, coefs[i]);
    return s;
}

Scalar Series::coefficient(const MultiIndex& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar() : it->second;
}

Scalar Series::coefficient(unsigned d) const {
    if (vars_ != 1) fail(Errc::shape_mismatch, "coefficient(degree) needs a univariate series");
    return coefficient(MultiIndex{static_cast<Exponent>(d)});
}

void Series::add_term(const MultiIndex& m, const Scalar& coef) {
    if (m.size() != vars_)
        fail(Errc::shape_mismatch, "monomial with " + std::to_string(m.size()) + " exponents in a " +
                                       std::to_string(vars_) + "-variable series");
    if (m.degree() == 0) fail(Errc::invalid_argument, "series cannot carry a constant term");
    if (m.degree() > precision_) return;
    Scalar c = ring_.reduce(coef);
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second = ring_.add(it->second, c);
        if (it->second.is_zero()) terms_.erase(it);
    }
}

std::optional<unsigned> Series::valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first.degree();
}

bool Series::is_linear() const {
    return terms_.empty() || terms_.rbegin()->first.degree() == 1;
}

void Series::require_same_shape(const Series& g, const char* op) const {
    if (!(ring_ == g.ring_) || vars_ != g.vars_ || precision_ != g.precision_)
        fail(ring_ == g.ring_ ? Errc::shape_mismatch : Errc::descriptor_mismatch,
             std::string(op) + ": operands differ in ring, variable count or precision (" + ring_.to_string() +
                 "/" + std::to_string(vars_) + "/" + std::to_string(precision_) + " vs " + g.ring_.to_string() +
                 "/" + std::to_string(g.vars_) + "/" + std::to_string(g.precision_) + ")");
}

Series& Series::operator+=(const Series& g) {
    require_same_shape(g, "add");
    for (const auto& [m, c] : g.terms_) {
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second = ring_.add(it->second, c);
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

Series& Series::operator-=(const Series& g) {
    require_same_shape(g, "sub");
    for (const auto& [m, c] : g.terms_) {
        auto [it, inserted] = terms_.try_emplace(m, ring_.neg(c));
        if (!inserted) {
            it->second = ring_.sub(it->second, c);
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

Series operator-(const Series& f) {
    Series r(f.ring_, f.vars_, f.precision_);
    for (const auto& [m, c] : f.terms_) r.terms_.emplace_hint(r.terms_.end(), m, f.ring_.neg(c));
    return r;
}

Series operator*(const Series& f, const Series& g) {
    f.require_same_shape(g, "mul");
    Series r(f.ring_, f.vars_, f.precision_);
    if (f.terms_.empty() || g.terms_.empty()) return r;
    const unsigned n = f.precision_;
    const unsigned g_low = g.terms_.begin()->first.degree();
    for (const auto& [ma, ca] : f.terms_) {
        if (ma.degree() + g_low > n) break;
        for (const auto& [mb, cb] : g.terms_) {
            if (ma.degree() + mb.degree() > n) break;
            Scalar prod = f.ring_.mul(ca, cb);
            if (prod.is_zero()) continue;
            auto [it, inserted] = r.terms_.try_emplace(ma + mb, std::move(prod));
            if (!inserted) it->second = f.ring_.add(it->second, prod);
        }
    }
    std::erase_if(r.terms_, [](const auto& kv) { return kv.second.is_zero(); });
    return r;
}

Series Series::scaled(const Scalar& b) const {
    Series r(ring_, vars_, precision_);
    Scalar bb = ring_.reduce(b);
    if (bb.is_zero()) return r;
    for (const auto& [m, c] : terms_) {
        Scalar p = ring_.mul(c, bb);
        if (!p.is_zero()) r.terms_.emplace_hint(r.terms_.end(), m, std::move(p));
    }
    return r;
}

Series Series::scaled(const RingElement& b) const {
    if (!(b.ring() == ring_))
        fail(Errc::descriptor_mismatch, "scalar from " + b.ring().to_string() + " applied to a series over " +
                                            ring_.to_string());
    return scaled(b.value());
}

Series Series::truncated(unsigned k) const {
    if (k == 0 || k > precision_)
        fail(Errc::invalid_argument, "truncation degree " + std::to_string(k) + " outside [1, " +
                                         std::to_string(precision_) + "]");
    Series r(ring_, vars_, k);
    for (const auto& [m, c] : terms_) {
        if (m.degree() > k) break;
        r.terms_.emplace_hint(r.terms_.end(), m, c);
    }
    return r;
}

Series Series::homogeneous_part(unsigned k) const {
    Series r(ring_, vars_, precision_);
    for (const auto& [m, c] : terms_)
        if (m.degree() == k) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
}

Series Series::partial_derivative(std::size_t var) const {
    if (var >= vars_) fail(Errc::invalid_argument, "derivative variable out of range");
    if (precision_ < 2) fail(Errc::invalid_argument, "derivative of a precision-1 series has no terms to keep");
    Series r(ring_, vars_, precision_ - 1);
    for (const auto& [m, c] : terms_) {
        if (m[var] == 0 || m.degree() == 1) continue;
        std::vector<Exponent> e = m.exponents();
        Scalar factor = ring_.from_integer(static_cast<std::int64_t>(e[var]));
        e[var] -= 1;
        r.add_term(MultiIndex(std::move(e)), ring_.mul(c, factor));
    }
    return r;
}

Series Series::integrated() const {
    if (vars_ != 1) fail(Errc::shape_mismatch, "integration is defined for univariate series only");
    Series r(ring_, 1, precision_ + 1);
    for (const auto& [m, c] : terms_) {
        const unsigned i = m.degree();
        auto q = ring_.divide_by_integer(c, mpz_class(static_cast<unsigned long>(i + 1)));
        if (!q)
            fail(Errc::not_divisible, "cannot divide the coefficient of x^" + std::to_string(i) + " by " +
                                          std::to_string(i + 1) + " in " + ring_.to_string());
        r.add_term(MultiIndex{static_cast<Exponent>(i + 1)}, *q);
    }
    return r;
}

Series Series::pow(unsigned e) const {
    if (e == 0) fail(Errc::invalid_argument, "f^0 = 1 is not a series without constant term");
    Series r = *this;
    for (unsigned i = 1; i < e && !r.is_zero(); ++i) r = r * *this;
    return r;
}

std::string Series::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        Scalar mag = c;
        bool negative = c.sign() < 0;
        if (negative) mag = -c;
        if (out.empty()) out += negative ? "-" : "";
        else out += negative ? " - " : " + ";
        if (!mag.is_one()) out += mag.to_string() + "*";
        out += format_monomial(m);
    }
    return out;
}

bool operator==(const Series& f, const Series& g) {
    return f.ring_ == g.ring_ && f.vars_ == g.vars_ && f.precision_ == g.precision_ && f.terms_ == g.terms_;
}

Series substitute(const Series& g, std::span<const Series> fs) {
    if (fs.size() != g.vars())
        fail(Errc::shape_mismatch, "substitute: " + std::to_string(fs.size()) + " series for " +
                                       std::to_string(g.vars()) + " variables");
    if (fs.empty()) {
        // A series in no variables is zero; the target space is unknown.
        fail(Errc::shape_mismatch, "substitute: no series supplied");
    }
    const Series& first = fs.front();
    for (const auto& f : fs) {
        if (!(f.ring() == g.ring()))
            fail(Errc::descriptor_mismatch, "substitute: series over different rings");
        if (f.vars() != first.vars() || f.precision() != g.precision())
            fail(Errc::shape_mismatch, "substitute: inner series must share variable count and the outer precision");
    }
    const std::size_t m = g.vars();
    const unsigned n = g.precision();
    Series result(g.ring(), first.vars(), n);

    // powers[i][e] = f_i^e, filled lazily; sized up front so references stay valid
    std::vector<std::vector<std::optional<Series>>> powers(m);
    for (const auto& [a, c] : g.terms())
        for (std::size_t i = 0; i < m; ++i)
            if (powers[i].size() <= a[i]) powers[i].resize(a[i] + 1U);
    std::function<const Series&(std::size_t, unsigned)> power = [&](std::size_t i, unsigned e) -> const Series& {
        auto& cache = powers[i];
        if (!cache[e]) {
            if (e == 1) cache[e] = fs[i];
            else {
                unsigned half = e / 2;
                const Series& a = power(i, half);
                Series sq = a * a;
                cache[e] = (e % 2 == 0) ? std::move(sq) : sq * fs[i];
            }
        }
        return *cache[e];
    };

    // Visit monomials of g in lexicographic order so consecutive monomials
    // share prefix products prod_{i<j} f_i^{a_i}.
    std::vector<const std::pair<const MultiIndex, Scalar>*> order;
    order.reserve(g.terms().size());
    for (const auto& kv : g.terms()) order.push_back(&kv);
    std::sort(order.begin(), order.end(),
              [](auto* a, auto* b) { return a->first.exponents() > b->first.exponents(); });

    std::vector<std::optional<Series>> prefix(m + 1); // nullopt = 1
    const MultiIndex* prev = nullptr;
    for (const auto* term : order) {
        const MultiIndex& a = term->first;
        std::size_t j = 0;
        if (prev) while (j < m && (*prev)[j] == a[j]) ++j;
        for (std::size_t i = j; i < m; ++i) {
            const auto& base = prefix[i];
            if (a[i] == 0) {
                prefix[i + 1] = base;
            } else if (base && base->is_zero()) {
                prefix[i + 1] = base;
            } else {
                const Series& p = power(i, a[i]);
                prefix[i + 1] = base ? *base * p : p;
            }
        }
        prev = &a;
        result += prefix[m]->scaled(term->second);
    }
    return result;
}

Series embed_univariate(const Series& f, std::size_t vars, std::size_t var) {
    if (f.vars() != 1) fail(Errc::shape_mismatch, "embed_univariate needs a univariate series");
    if (var >= vars) fail(Errc::invalid_argument, "embed_univariate: variable out of range");
    Series r(f.ring(), vars, f.precision());
    for (const auto& [m, c] : f.terms()) r.add_term(MultiIndex::unit(vars, var, m[0]), c);
    return r;
}

Series compositional_inverse(const Series& phi) {
    if (phi.vars() != 1) fail(Errc::shape_mismatch, "compositional inverse needs a univariate series");
    const Ring& ring = phi.ring();
    const unsigned n = phi.precision();
    auto lead_inv = ring.try_invert(phi.coefficient(1U));
    if (!lead_inv)
        fail(Errc::not_invertible, "linear coefficient " + phi.coefficient(1U).to_string() +
                                       " is not a unit of " + ring.to_string());
    Series psi(ring, 1, n);
    psi.add_term(MultiIndex{1}, *lead_inv);
    // phi(psi + c x^d) = phi(psi) + a c x^d mod x^(d+1), a the linear coefficient.
    for (unsigned d = 2; d <= n; ++d) {
        Scalar residual = substitute(phi, {psi}).coefficient(d);
        if (residual.is_zero()) continue;
        psi.add_term(MultiIndex{static_cast<Exponent>(d)}, ring.neg(ring.mul(*lead_inv, residual)));
    }
    return psi;
}

} // namespace fg
