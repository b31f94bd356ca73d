#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "qrd/multi_index.hpp"
#include "qrd/rational.hpp"

namespace qrd {

/// Sparse multivariate polynomial over Coeff, exponent-keyed with
/// graded-lexicographic iteration order.
template <class Coeff>
class Polynomial {
public:
    using Terms = std::map<MultiIndex, Coeff, GradedLexLess>;

    explicit Polynomial(std::size_t n) : n_(n) {}

    static Polynomial zero(std::size_t n) { return Polynomial(n); }
    static Polynomial constant(std::size_t n, Coeff c) {
        Polynomial p(n);
        p.add_term(MultiIndex(n), c);
        return p;
    }
    static Polynomial variable(std::size_t n, std::size_t k) {
        Polynomial p(n);
        p.add_term(MultiIndex::unit(n, k), Coeff(1));
        return p;
    }
    static Polynomial monomial(std::size_t n, MultiIndex a, Coeff c) {
        Polynomial p(n);
        p.add_term(std::move(a), std::move(c));
        return p;
    }

    std::size_t nvars() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    std::int64_t degree() const {
        std::int64_t d = 0;
        for (const auto& [a, c] : terms_) d = std::max(d, a.total_degree());
        return d;
    }

    Coeff coefficient(const MultiIndex& a) const {
        auto it = terms_.find(a);
        return it == terms_.end() ? Coeff(0) : it->second;
    }

    void add_term(MultiIndex a, Coeff c) {
        if (a.size() != n_) throw std::invalid_argument("Polynomial: exponent length mismatch");
        auto [it, inserted] = terms_.emplace(std::move(a), c);
        if (!inserted) it->second = it->second + c;
        if (coeff_is_zero(it->second)) terms_.erase(it);
    }

    Polynomial operator+(const Polynomial& o) const {
        Polynomial r(*this);
        for (const auto& [a, c] : o.terms_) r.add_term(a, c);
        return r;
    }
    Polynomial operator-(const Polynomial& o) const {
        Polynomial r(*this);
        for (const auto& [a, c] : o.terms_) r.add_term(a, Coeff(0) - c);
        return r;
    }
    Polynomial operator*(const Polynomial& o) const {
        Polynomial r(n_);
        for (const auto& [a, ca] : terms_)
            for (const auto& [b, cb] : o.terms_) r.add_term(a + b, ca * cb);
        return r;
    }
    Polynomial operator*(const Coeff& s) const {
        Polynomial r(n_);
        for (const auto& [a, c] : terms_) r.add_term(a, c * s);
        return r;
    }

    Polynomial pow(std::int64_t e) const {
        Polynomial r = constant(n_, Coeff(1));
        for (std::int64_t k = 0; k < e; ++k) r = r * *this;
        return r;
    }

    Polynomial derivative(std::size_t k) const {
        Polynomial r(n_);
        for (const auto& [a, c] : terms_) {
            if (a[k] == 0) continue;
            MultiIndex b(a);
            b[k] -= 1;
            r.add_term(b, c * Coeff(a[k]));
        }
        return r;
    }

    /// Truncate to terms of total degree <= cap.
    Polynomial truncated(std::int64_t cap) const {
        Polynomial r(n_);
        for (const auto& [a, c] : terms_)
            if (a.total_degree() <= cap) r.add_term(a, c);
        return r;
    }

    /// Drop coefficients with |c| <= eps (floating instantiation only).
    Polynomial pruned(double eps) const {
        Polynomial r(n_);
        for (const auto& [a, c] : terms_)
            if (std::abs(coeff_to_complex(c)) > eps) r.add_term(a, c);
        return r;
    }

    template <class Point>
    auto evaluate(const std::vector<Point>& z) const {
        if (z.size() != n_) throw std::invalid_argument("Polynomial: evaluation dimension mismatch");
        using R = decltype(Coeff(0) * z[0]);
        R acc = R(0);
        for (const auto& [a, c] : terms_) {
            R t = R(c);
            for (std::size_t i = 0; i < n_; ++i)
                for (std::int64_t e = 0; e < a[i]; ++e) t = t * z[i];
            acc = acc + t;
        }
        return acc;
    }

    /// Substitute polynomials for the variables: p(q_0(z), ..., q_{n-1}(z)).
    Polynomial substitute(const std::vector<Polynomial>& q) const {
        if (q.size() != n_) throw std::invalid_argument("Polynomial: substitution arity mismatch");
        std::size_t m = q.empty() ? n_ : q[0].nvars();
        Polynomial acc(m);
        for (const auto& [a, c] : terms_) {
            Polynomial t = Polynomial::constant(m, c);
            for (std::size_t i = 0; i < n_; ++i)
                for (std::int64_t e = 0; e < a[i]; ++e) t = t * q[i];
            acc = acc + t;
        }
        return acc;
    }

    Polynomial<std::complex<double>> to_floating() const {
        Polynomial<std::complex<double>> r(n_);
        for (const auto& [a, c] : terms_) r.add_term(a, coeff_to_complex(c));
        return r;
    }

    bool operator==(const Polynomial& o) const { return n_ == o.n_ && terms_ == o.terms_; }

private:
    std::size_t n_;
    Terms terms_;
};

using ExactPoly = Polynomial<GaussianRational>;
using FloatPoly = Polynomial<std::complex<double>>;

}  // namespace qrd
