#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "qrd/polynomial.hpp"
#include "qrd/resonance.hpp"

namespace qrd {

/// Polynomial self-map of C^n: n sparse components.
template <class Coeff>
class PolyMap {
public:
    explicit PolyMap(std::size_t n) : n_(n), comps_(n, Polynomial<Coeff>(n)) {}
    explicit PolyMap(std::vector<Polynomial<Coeff>> comps)
        : n_(comps.size()), comps_(std::move(comps)) {
        for (const auto& c : comps_)
            if (c.nvars() != n_) throw std::invalid_argument("PolyMap: component arity mismatch");
    }

    static PolyMap identity(std::size_t n) {
        PolyMap f(n);
        for (std::size_t i = 0; i < n; ++i) f.comps_[i] = Polynomial<Coeff>::variable(n, i);
        return f;
    }
    static PolyMap diagonal(const std::vector<Coeff>& d) {
        PolyMap f(d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            f.comps_[i] = Polynomial<Coeff>::monomial(d.size(), MultiIndex::unit(d.size(), i), d[i]);
        return f;
    }
    static PolyMap linear(const std::vector<std::vector<Coeff>>& A) {
        std::size_t n = A.size();
        PolyMap f(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (A[i].size() != n) throw std::invalid_argument("PolyMap: matrix not square");
            for (std::size_t j = 0; j < n; ++j)
                if (!coeff_is_zero(A[i][j]))
                    f.comps_[i].add_term(MultiIndex::unit(n, j), A[i][j]);
        }
        return f;
    }

    std::size_t dim() const { return n_; }
    const Polynomial<Coeff>& component(std::size_t i) const { return comps_[i]; }
    Polynomial<Coeff>& component(std::size_t i) { return comps_[i]; }
    const std::vector<Polynomial<Coeff>>& components() const { return comps_; }

    std::int64_t degree() const {
        std::int64_t d = 0;
        for (const auto& c : comps_) d = std::max(d, c.degree());
        return d;
    }

    bool is_identity() const { return *this == identity(n_); }

    template <class Point>
    std::vector<Point> evaluate(const std::vector<Point>& z) const {
        std::vector<Point> out(n_);
        for (std::size_t i = 0; i < n_; ++i) out[i] = comps_[i].evaluate(z);
        return out;
    }

    /// (*this) o g: first apply g, then this map.
    PolyMap compose(const PolyMap& g) const {
        if (g.dim() != n_) throw std::invalid_argument("PolyMap: composition dimension mismatch");
        PolyMap r(n_);
        for (std::size_t i = 0; i < n_; ++i) r.comps_[i] = comps_[i].substitute(g.comps_);
        return r;
    }

    bool fixes_origin() const {
        MultiIndex zero(n_);
        for (const auto& c : comps_)
            if (!coeff_is_zero(c.coefficient(zero))) return false;
        return true;
    }

    /// Degree-1 truncation; requires f(0) = 0.
    PolyMap linear_part() const {
        if (!fixes_origin())
            throw std::invalid_argument("linear_part: map does not fix the origin");
        PolyMap r(n_);
        for (std::size_t i = 0; i < n_; ++i) r.comps_[i] = comps_[i].truncated(1);
        return r;
    }

    PolyMap<std::complex<double>> to_floating() const {
        std::vector<FloatPoly> c;
        c.reserve(n_);
        for (const auto& p : comps_) c.push_back(p.to_floating());
        return PolyMap<std::complex<double>>(std::move(c));
    }

    PolyMap pruned(double eps) const {
        PolyMap r(n_);
        for (std::size_t i = 0; i < n_; ++i) r.comps_[i] = comps_[i].pruned(eps);
        return r;
    }

    bool operator==(const PolyMap& o) const { return comps_ == o.comps_; }

private:
    std::size_t n_;
    std::vector<Polynomial<Coeff>> comps_;
};

using ExactMap = PolyMap<GaussianRational>;
using FloatMap = PolyMap<std::complex<double>>;

struct ResonanceViolation {
    std::size_t component;
    MultiIndex exponent;
};

/// True iff each component's support lies in E_i (identity linear term
/// included via e_i in E_i); violations are listed exactly.
template <class Coeff>
std::vector<ResonanceViolation> resonance_violations(const PolyMap<Coeff>& f,
                                                     const ResonanceProfile& p) {
    std::vector<ResonanceViolation> bad;
    for (std::size_t i = 0; i < f.dim(); ++i) {
        for (const auto& [a, c] : f.component(i).terms()) {
            const auto& E = p.sets[i].elements;
            if (std::find(E.begin(), E.end(), a) == E.end()) bad.push_back({i, a});
        }
    }
    return bad;
}

template <class Coeff>
bool is_resonant(const PolyMap<Coeff>& f, const ResonanceProfile& p) {
    return resonance_violations(f, p).empty();
}

/// sigma_i = z_i + g_i with g_i supported on nonlinear i-th resonant
/// monomials. Triangular in any proper ordering of the weights.
template <class Coeff>
class ResonantMap {
public:
    ResonantMap(PolyMap<Coeff> sigma, ResonanceProfile profile)
        : sigma_(std::move(sigma)), profile_(std::move(profile)) {
        const std::size_t n = sigma_.dim();
        if (n != profile_.M.n()) throw std::invalid_argument("ResonantMap: dimension mismatch");
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& [a, c] : sigma_.component(i).terms()) {
                if (a == MultiIndex::unit(n, i)) {
                    if (!(c == Coeff(1)))
                        throw std::invalid_argument("ResonantMap: linear part is not the identity");
                    continue;
                }
                if (a.total_degree() < 2)
                    throw std::invalid_argument("ResonantMap: non-identity linear or constant term");
                const auto& E = profile_.sets[i].elements;
                if (std::find(E.begin(), E.end(), a) == E.end())
                    throw std::invalid_argument("ResonantMap: non-resonant term in component " +
                                                std::to_string(i + 1));
            }
            if (coeff_is_zero(sigma_.component(i).coefficient(MultiIndex::unit(n, i))))
                throw std::invalid_argument("ResonantMap: missing identity term");
        }
    }

    /// Builds identity + g from the nonlinear parts alone.
    static ResonantMap from_nonlinear(std::vector<Polynomial<Coeff>> g, ResonanceProfile profile) {
        std::size_t n = g.size();
        PolyMap<Coeff> s = PolyMap<Coeff>::identity(n);
        for (std::size_t i = 0; i < n; ++i) s.component(i) = s.component(i) + g[i];
        return ResonantMap(std::move(s), std::move(profile));
    }

    const PolyMap<Coeff>& map() const { return sigma_; }
    const ResonanceProfile& profile() const { return profile_; }
    std::int64_t degree() const { return sigma_.degree(); }

private:
    PolyMap<Coeff> sigma_;
    ResonanceProfile profile_;
};

/// Exact inverse by back-substitution in proper order. Each component of the
/// result is checked against its resonant support; the degree bound
/// deg(inverse) <= mu holds by construction and is asserted.
template <class Coeff>
ResonantMap<Coeff> invert_resonant(const ResonantMap<Coeff>& s, double prune_eps = 0.0) {
    const auto& p = s.profile();
    const std::size_t n = s.map().dim();

    // inv[i] expresses z_i in terms of w; seed with w_i and refine in proper
    // order. g_i only involves variables strictly earlier in the ordering
    // (equal weights cannot appear in a nonlinear resonant term of E_i).
    std::vector<Polynomial<Coeff>> inv;
    inv.reserve(n);
    for (std::size_t i = 0; i < n; ++i) inv.push_back(Polynomial<Coeff>::variable(n, i));

    for (std::size_t pos = 0; pos < n; ++pos) {
        std::size_t i = p.proper_ordering[pos];
        Polynomial<Coeff> g = s.map().component(i);
        g.add_term(MultiIndex::unit(n, i), Coeff(-1));  // strip the identity term
        // z_i = w_i - g_i(z(w)); every z_j appearing in g is already solved.
        for (const auto& [a, c] : g.terms())
            if (a[i] != 0)
                throw std::invalid_argument("invert_resonant: component depends on itself");
        Polynomial<Coeff> zi = Polynomial<Coeff>::variable(n, i) - g.substitute(inv);
        if (prune_eps > 0) zi = zi.pruned(prune_eps);
        // support must stay inside the resonant class at every step
        const auto& E = p.sets[i].elements;
        for (const auto& [a, c] : zi.terms())
            if (std::find(E.begin(), E.end(), a) == E.end())
                throw std::logic_error("invert_resonant: non-resonant term produced");
        inv[i] = zi;
    }

    ResonantMap<Coeff> tau(PolyMap<Coeff>(std::move(inv)), p);
    if (tau.degree() > p.mu) throw std::logic_error("invert_resonant: degree bound violated");
    return tau;
}

/// Theorem factorization: (sigma2)^{-1} o J o sigma1. The result fixes the
/// origin and has linear part exactly J.
template <class Coeff>
PolyMap<Coeff> factor_biholomorphism(const ResonantMap<Coeff>& s1, const ResonantMap<Coeff>& s2,
                                     const PolyMap<Coeff>& J) {
    if (J.degree() > 1 || !J.fixes_origin())
        throw std::invalid_argument("factor_biholomorphism: J must be linear homogeneous");
    auto f = invert_resonant(s2).map().compose(J.compose(s1.map()));
    if (!f.fixes_origin()) throw std::logic_error("factor_biholomorphism: origin not fixed");
    if (!(f.linear_part() == J)) throw std::logic_error("factor_biholomorphism: linear part != J");
    return f;
}

}  // namespace qrd
