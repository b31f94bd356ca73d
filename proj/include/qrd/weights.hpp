#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "qrd/multi_index.hpp"

namespace qrd {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// n x r integer matrix of torus weights: row i is the weight m_i of z_i,
/// column j collects the j-th exponents m^j.
class WeightMatrix {
public:
    WeightMatrix(std::size_t n, std::size_t r, std::vector<std::vector<std::int64_t>> rows)
        : n_(n), r_(r), rows_(std::move(rows)) {
        if (n_ < 1 || r_ < 1) throw std::invalid_argument("WeightMatrix: n and r must be >= 1");
        if (rows_.size() != n_) throw std::invalid_argument("WeightMatrix: row count mismatch");
        for (const auto& row : rows_)
            if (row.size() != r_) throw std::invalid_argument("WeightMatrix: row length mismatch");
    }
    explicit WeightMatrix(const std::vector<std::vector<std::int64_t>>& rows)
        : WeightMatrix(rows.size(), rows.empty() ? 0 : rows[0].size(), rows) {}
    WeightMatrix(std::initializer_list<std::vector<std::int64_t>> rows)
        : WeightMatrix(std::vector<std::vector<std::int64_t>>(rows)) {}

    std::size_t n() const { return n_; }
    std::size_t r() const { return r_; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
    const std::vector<std::int64_t>& row(std::size_t i) const { return rows_[i]; }
    const std::vector<std::vector<std::int64_t>>& rows() const { return rows_; }

    bool operator==(const WeightMatrix& o) const { return rows_ == o.rows_; }

    /// Weight of the monomial z^alpha: the vector (alpha . m^1, ..., alpha . m^r).
    std::vector<std::int64_t> weight_of_monomial(const MultiIndex& alpha) const {
        if (alpha.size() != n_)
            throw std::invalid_argument("weight_of_monomial: multi-index length mismatch");
        std::vector<std::int64_t> w(r_, 0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < r_; ++j) w[j] += alpha[i] * rows_[i][j];
        return w;
    }

    std::int64_t row_dot(std::size_t i, const std::vector<std::int64_t>& c) const {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < r_; ++j) s += rows_[i][j] * c[j];
        return s;
    }

private:
    std::size_t n_, r_;
    std::vector<std::vector<std::int64_t>> rows_;
};

/// Dual witness of validity: integer c with m_i . c >= 1 for every row.
struct ValidityCertificate {
    std::vector<std::int64_t> c;

    bool verify(const WeightMatrix& M) const {
        if (c.size() != M.r()) return false;
        for (std::size_t i = 0; i < M.n(); ++i)
            if (M.row_dot(i, c) < 1) return false;
        return true;
    }
};

/// Witness of invalidity: nonzero gamma in N^n with gamma . m^j = 0 for all j,
/// so z^gamma is an invariant nonconstant holomorphic function.
struct InvalidityCertificate {
    MultiIndex gamma;

    bool verify(const WeightMatrix& M) const {
        if (gamma.size() != M.n() || gamma.is_zero()) return false;
        for (auto w : M.weight_of_monomial(gamma))
            if (w != 0) return false;
        return true;
    }
};

using ValidationResult = std::variant<ValidityCertificate, InvalidityCertificate>;

inline bool is_valid(const ValidationResult& v) {
    return std::holds_alternative<ValidityCertificate>(v);
}

namespace detail {

// One linear constraint a . c >= b together with the nonnegative multipliers
// on the original rows that produced it (Farkas bookkeeping).
struct Constraint {
    std::vector<BigRational> a;
    BigRational b;
    std::vector<BigRational> mult;
};

// Fourier-Motzkin feasibility for {c : Mc >= 1}. Returns a rational feasible
// point, or nullopt plus a Farkas multiplier vector y >= 0 with y^T M = 0.
inline std::optional<std::vector<BigRational>> fm_feasible(
    const WeightMatrix& M, std::vector<BigRational>* farkas) {
    const std::size_t n = M.n(), r = M.r();
    std::vector<Constraint> cons(n);
    for (std::size_t i = 0; i < n; ++i) {
        cons[i].a.resize(r);
        for (std::size_t j = 0; j < r; ++j) cons[i].a[j] = M(i, j);
        cons[i].b = 1;
        cons[i].mult.assign(n, 0);
        cons[i].mult[i] = 1;
    }

    // bounds[v] after eliminating variable v: lower/upper constraints in the
    // remaining variables, used for back-substitution.
    struct VarBounds {
        std::vector<Constraint> lower, upper;  // lower: c_v >= expr; upper: c_v <= expr
    };
    std::vector<VarBounds> bounds(r);

    for (std::size_t v = r; v-- > 0;) {
        std::vector<Constraint> pos, neg, zero;
        for (auto& ct : cons) {
            if (ct.a[v] > 0)
                pos.push_back(ct);
            else if (ct.a[v] < 0)
                neg.push_back(ct);
            else
                zero.push_back(ct);
        }
        bounds[v].lower = pos;  // a_v c_v >= b - sum a_u c_u, a_v > 0
        bounds[v].upper = neg;
        cons = std::move(zero);
        for (const auto& p : pos) {
            for (const auto& q : neg) {
                // eliminate c_v from p (coeff > 0) and q (coeff < 0)
                BigRational wp = -q.a[v], wq = p.a[v];
                Constraint c;
                c.a.assign(r, 0);
                for (std::size_t u = 0; u < r; ++u) c.a[u] = wp * p.a[u] + wq * q.a[u];
                c.b = wp * p.b + wq * q.b;
                c.mult.assign(n, 0);
                for (std::size_t i = 0; i < n; ++i) c.mult[i] = wp * p.mult[i] + wq * q.mult[i];
                cons.push_back(c);
            }
        }
    }

    for (const auto& ct : cons) {
        if (ct.b > 0) {  // 0 >= b > 0: infeasible
            if (farkas) *farkas = ct.mult;
            return std::nullopt;
        }
    }

    // Back-substitute a feasible point, tightest lower bound plus one.
    std::vector<BigRational> c(r, 0);
    for (std::size_t v = 0; v < r; ++v) {
        std::optional<BigRational> lo, hi;
        auto rhs = [&](const Constraint& ct) {
            BigRational s = ct.b;
            for (std::size_t u = 0; u < v; ++u) s -= ct.a[u] * c[u];
            return s / ct.a[v];
        };
        for (const auto& ct : bounds[v].lower) {
            BigRational x = rhs(ct);
            if (!lo || x > *lo) lo = x;
        }
        for (const auto& ct : bounds[v].upper) {
            BigRational x = rhs(ct);
            if (!hi || x < *hi) hi = x;
        }
        if (lo && hi)
            c[v] = (*lo + *hi) / 2;
        else if (lo)
            c[v] = *lo + 1;
        else if (hi)
            c[v] = *hi - 1;
        else
            c[v] = 0;
    }
    return c;
}

// Smallest-degree nonzero gamma in N^n with M^T gamma = 0, searched by
// increasing |gamma|; existence (hence termination) guaranteed by caller.
inline MultiIndex minimal_invariant_exponent(const WeightMatrix& M, std::int64_t degree_hint) {
    const std::size_t n = M.n(), r = M.r();
    for (std::int64_t d = 1;; ++d) {
        MultiIndex g(n);
        std::vector<std::int64_t> w(r, 0);
        // DFS over compositions of d into n parts
        std::function<bool(std::size_t, std::int64_t)> rec = [&](std::size_t i,
                                                                 std::int64_t rem) -> bool {
            if (i + 1 == n) {
                g[i] = rem;
                auto wt = M.weight_of_monomial(g);
                bool ok = true;
                for (auto x : wt) ok = ok && x == 0;
                if (ok) return true;
                g[i] = 0;
                return false;
            }
            for (std::int64_t e = rem; e >= 0; --e) {
                g[i] = e;
                if (rec(i + 1, rem - e)) return true;
            }
            g[i] = 0;
            return false;
        };
        if (rec(0, d)) return g;
        if (d > degree_hint + 1 && d > 64)
            throw std::logic_error("minimal_invariant_exponent: search exceeded bound");
    }
}

}  // namespace detail

/// Decide whether the action has only constant invariant holomorphic functions.
/// Gordan's alternative: exactly one of {integer c with Mc >= 1} and
/// {nonzero gamma in N^n with M^T gamma = 0} exists.
inline ValidationResult validate_action(const WeightMatrix& M) {
    std::vector<BigRational> farkas;
    auto feasible = detail::fm_feasible(M, &farkas);

    if (!feasible) {
        // Scale the Farkas multipliers to integers for a degree hint, then
        // search for the minimal-degree certificate.
        BigInt lcm_den = 1;
        for (const auto& y : farkas)
            lcm_den = boost::multiprecision::lcm(lcm_den, BigInt(denominator(y)));
        BigInt total = 0;
        for (const auto& y : farkas) total += numerator(y * BigRational(lcm_den));
        std::int64_t hint = total.convert_to<std::int64_t>();
        return InvalidityCertificate{detail::minimal_invariant_exponent(M, hint)};
    }

    // Integer certificate: scale the rational point, then shrink to minimal
    // sup-norm by box search for small rank.
    BigInt lcm_den = 1;
    for (const auto& q : *feasible)
        lcm_den = boost::multiprecision::lcm(lcm_den, BigInt(denominator(q)));
    std::vector<std::int64_t> c0(M.r());
    std::int64_t box = 1;
    for (std::size_t j = 0; j < M.r(); ++j) {
        BigInt v = numerator((*feasible)[j] * BigRational(lcm_den));
        c0[j] = v.convert_to<std::int64_t>();
        box = std::max(box, std::abs(c0[j]));
    }
    ValidityCertificate cert{c0};

    if (M.r() <= 3) {
        for (std::int64_t bnd = 1; bnd <= box; ++bnd) {
            std::vector<std::int64_t> c(M.r(), -bnd);
            for (;;) {
                ValidityCertificate cand{c};
                if (cand.verify(M)) return cand;
                std::size_t j = 0;
                while (j < M.r() && c[j] == bnd) c[j++] = -bnd;
                if (j == M.r()) break;
                ++c[j];
            }
        }
    }
    return cert;
}

/// rho(lambda) z = (lambda^{m_1} z_1, ..., lambda^{m_n} z_n).
inline std::vector<std::complex<double>> apply_action(const WeightMatrix& M,
                                                      const std::vector<std::complex<double>>& lambda,
                                                      const std::vector<std::complex<double>>& z) {
    if (lambda.size() != M.r()) throw std::invalid_argument("apply_action: lambda length mismatch");
    if (z.size() != M.n()) throw std::invalid_argument("apply_action: point dimension mismatch");
    for (const auto& l : lambda)
        if (std::abs(std::abs(l) - 1.0) > 1e-9)
            throw std::invalid_argument("apply_action: lambda not on the unit torus");
    std::vector<std::complex<double>> out(M.n());
    for (std::size_t i = 0; i < M.n(); ++i) {
        std::complex<double> f = 1.0;
        for (std::size_t j = 0; j < M.r(); ++j) {
            std::int64_t e = M(i, j);
            std::complex<double> base = e >= 0 ? lambda[j] : 1.0 / lambda[j];
            for (std::int64_t k = 0; k < std::abs(e); ++k) f *= base;
        }
        out[i] = f * z[i];
    }
    return out;
}

}  // namespace qrd
