#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qrd/kernel.hpp"

namespace qrd {

/// Truncated Bergman kernel from the full Gram matrix over all monomials of
/// degree <= cap. Orthogonality is not assumed anywhere; it can only enter
/// through the computed moments, which keeps the resonance structure of the
/// derived quantities falsifiable.
struct DenseKernel {
    DomainSpec D;
    std::int64_t cap = 0;
    std::vector<MultiIndex> monomials;
    Eigen::MatrixXcd gram, gram_inv;
    double max_stderr = 0.0;

    std::size_t index_of(const MultiIndex& a) const {
        for (std::size_t k = 0; k < monomials.size(); ++k)
            if (monomials[k] == a) return k;
        throw std::invalid_argument("DenseKernel: monomial outside truncation");
    }
    /// c_{alpha,beta} = (G^{-1})_{beta,alpha}
    std::complex<double> coeff(std::size_t a, std::size_t b) const {
        return gram_inv(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a));
    }

    Eigen::VectorXcd monomial_vector(const std::vector<std::complex<double>>& z) const {
        Eigen::VectorXcd m(static_cast<Eigen::Index>(monomials.size()));
        for (std::size_t k = 0; k < monomials.size(); ++k) {
            std::complex<double> t = 1.0;
            for (std::size_t i = 0; i < z.size(); ++i)
                for (std::int64_t e = 0; e < monomials[k][i]; ++e) t *= z[i];
            m(static_cast<Eigen::Index>(k)) = t;
        }
        return m;
    }
    /// Derivative d/dz_k of the monomial vector at z.
    Eigen::VectorXcd monomial_vector_d(const std::vector<std::complex<double>>& z,
                                       std::size_t k) const {
        Eigen::VectorXcd m(static_cast<Eigen::Index>(monomials.size()));
        for (std::size_t t = 0; t < monomials.size(); ++t) {
            const auto& a = monomials[t];
            if (a[k] == 0) {
                m(static_cast<Eigen::Index>(t)) = 0.0;
                continue;
            }
            std::complex<double> v = static_cast<double>(a[k]);
            for (std::size_t i = 0; i < z.size(); ++i) {
                std::int64_t e = a[i] - (i == k ? 1 : 0);
                for (std::int64_t j = 0; j < e; ++j) v *= z[i];
            }
            m(static_cast<Eigen::Index>(t)) = v;
        }
        return m;
    }

    std::complex<double> eval(const std::vector<std::complex<double>>& z,
                              const std::vector<std::complex<double>>& w) const {
        return (monomial_vector(w).adjoint() * gram_inv * monomial_vector(z))(0);
    }

    /// t_ik(z,w) = d^2/dwbar_i dz_k log K via the quotient rule, numerically.
    Eigen::MatrixXcd metric_at(const std::vector<std::complex<double>>& z,
                               const std::vector<std::complex<double>>& w) const {
        const std::size_t n = D.dim();
        Eigen::VectorXcd mz = monomial_vector(z), mw = monomial_vector(w);
        std::vector<Eigen::VectorXcd> dz(n), dw(n);
        for (std::size_t k = 0; k < n; ++k) {
            dz[k] = monomial_vector_d(z, k);
            dw[k] = monomial_vector_d(w, k);
        }
        std::complex<double> K = (mw.adjoint() * gram_inv * mz)(0);
        Eigen::MatrixXcd T(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                std::complex<double> Kzk = (mw.adjoint() * gram_inv * dz[k])(0);
                std::complex<double> Kwi = (dw[i].adjoint() * gram_inv * mz)(0);
                std::complex<double> Kik = (dw[i].adjoint() * gram_inv * dz[k])(0);
                T(i, k) = (Kik * K - Kwi * Kzk) / (K * K);
            }
        return T;
    }
};

inline DenseKernel build_dense_kernel(const DomainSpec& D, std::int64_t cap,
                                      std::optional<MomentMethod> method = {},
                                      std::uint64_t samples = 1u << 20, std::uint64_t seed = 1) {
    DenseKernel dk{D, cap, multi_indices_up_to(D.dim(), cap), {}, {}, 0.0};
    const std::size_t m = dk.monomials.size();
    dk.gram.resize(m, m);

    bool mc = method && *method == MomentMethod::MonteCarlo;
    if (mc) {
        std::vector<std::pair<MultiIndex, MultiIndex>> probes;
        probes.reserve(m * m);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) probes.emplace_back(dk.monomials[a], dk.monomials[b]);
        auto vals = monte_carlo_moments(D, probes, samples, seed);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) {
                dk.gram(a, b) = vals[a * m + b].value;
                dk.max_stderr = std::max(dk.max_stderr, vals[a * m + b].stderr_est);
            }
    } else {
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                dk.gram(a, b) = monomial_moment(D, dk.monomials[a], dk.monomials[b], method).value;
    }
    dk.gram = ((dk.gram + dk.gram.adjoint()) / 2.0).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dk.gram);
    if (es.eigenvalues().minCoeff() <= 0)
        throw std::runtime_error("build_dense_kernel: Gram matrix not positive definite");
    dk.gram_inv = dk.gram.ldlt().solve(Eigen::MatrixXcd::Identity(m, m));
    return dk;
}

namespace detail {

/// Truncated reciprocal of Q = q0 (1 + R): (1/q0) sum (-R)^k, degree <= cap.
inline FloatPoly truncated_reciprocal(const FloatPoly& Q, std::int64_t cap) {
    auto q0 = Q.coefficient(MultiIndex(Q.nvars()));
    if (std::abs(q0) == 0.0) throw std::invalid_argument("truncated_reciprocal: Q(0) = 0");
    FloatPoly R = Q * (1.0 / q0);
    R.add_term(MultiIndex(Q.nvars()), -1.0);
    FloatPoly acc = FloatPoly::constant(Q.nvars(), 1.0);
    FloatPoly pw = FloatPoly::constant(Q.nvars(), 1.0);
    for (std::int64_t k = 1; k <= cap; ++k) {
        pw = (pw * R).truncated(cap);
        if (pw.is_zero()) break;
        acc = k % 2 ? acc - pw : acc + pw;
    }
    return acc * (1.0 / q0);
}

}  // namespace detail

struct DenseRepCoords {
    FloatMap sigma0{0};
    Eigen::MatrixXcd T00;
    FloatPoly K_z0{0};  // K(z,0) as a polynomial
};

/// sigma_0 and T(0,0) recomputed from the dense kernel: v_i = P_i/Q - P_i(0)/Q(0)
/// with P_i = d_{wbar_i} K(z, .)|_0 and Q = K(z,0), all as truncated series.
inline DenseRepCoords dense_rep_coords(const DenseKernel& dk) {
    const std::size_t n = dk.D.dim();
    const std::int64_t cap = dk.cap;

    FloatPoly Q(n);
    std::vector<FloatPoly> P(n, FloatPoly(n));
    std::size_t zero_idx = dk.index_of(MultiIndex(n));
    for (std::size_t a = 0; a < dk.monomials.size(); ++a) {
        auto cq = dk.coeff(a, zero_idx);
        if (cq != std::complex<double>{0.0}) Q.add_term(dk.monomials[a], cq);
        for (std::size_t i = 0; i < n; ++i) {
            auto c = dk.coeff(a, dk.index_of(MultiIndex::unit(n, i)));
            if (c != std::complex<double>{0.0}) P[i].add_term(dk.monomials[a], c);
        }
    }

    FloatPoly Qinv = detail::truncated_reciprocal(Q, cap);
    std::vector<FloatPoly> v(n, FloatPoly(n));
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = (P[i] * Qinv).truncated(cap);
        v[i].add_term(MultiIndex(n), -(P[i].coefficient(MultiIndex(n)) /
                                       Q.coefficient(MultiIndex(n))));
    }

    DenseRepCoords out;
    out.K_z0 = Q;
    out.T00.resize(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            out.T00(i, k) = v[i].derivative(k).coefficient(MultiIndex(n));

    Eigen::MatrixXcd Tinv = out.T00.inverse();
    std::vector<FloatPoly> comps(n, FloatPoly(n));
    for (std::size_t i = 0; i < n; ++i) {
        FloatPoly acc(n);
        for (std::size_t l = 0; l < n; ++l) acc = acc + v[l] * Tinv(i, l);
        comps[i] = acc;
    }
    out.sigma0 = FloatMap(std::move(comps));
    return out;
}

struct CrossCheckReport {
    double sigma_discrepancy = 0.0;   // dense vs decoupled sigma coefficients
    double nonresonant_mass = 0.0;    // dense sigma mass outside E_i
    double flatness = 0.0;            // max |K(z,0) - K00| coefficient mass
    double stderr_scale = 0.0;
};

/// Anti-tautology control: the dense path must reproduce the decoupled sigma_0
/// and independently exhibit the resonant support.
inline CrossCheckReport dense_cross_check(const DomainSpec& D, std::int64_t cap,
                                          std::optional<MomentMethod> method = {},
                                          std::uint64_t samples = 1u << 20,
                                          std::uint64_t seed = 1) {
    auto K = build_kernel(D, method == MomentMethod::MonteCarlo
                                 ? std::optional<MomentMethod>{}
                                 : method);
    if (cap < K.profile.mu)
        throw std::invalid_argument("dense_cross_check: cap below the resonance order");
    auto md = metric_data(K, 1e-7);
    auto rc = rep_coords(K, md, 1e-7);

    auto dk = build_dense_kernel(D, cap, method, samples, seed);
    auto dr = dense_rep_coords(dk);

    CrossCheckReport rep;
    rep.stderr_scale = dk.max_stderr;
    const std::size_t n = D.dim();
    for (std::size_t i = 0; i < n; ++i) {
        FloatPoly diff = dr.sigma0.component(i) - rc.sigma0.component(i);
        for (const auto& [a, c] : diff.terms())
            rep.sigma_discrepancy = std::max(rep.sigma_discrepancy, std::abs(c));
        const auto& E = K.profile.sets[i].elements;
        for (const auto& [a, c] : dr.sigma0.component(i).terms())
            if (std::find(E.begin(), E.end(), a) == E.end())
                rep.nonresonant_mass = std::max(rep.nonresonant_mass, std::abs(c));
    }
    FloatPoly flat = dr.K_z0;
    flat.add_term(MultiIndex(n), -std::complex<double>(K.K00));
    for (const auto& [a, c] : flat.terms()) rep.flatness = std::max(rep.flatness, std::abs(c));
    return rep;
}

/// Central finite differences of log K(z,w) in (z_k, wbar_i) on the dense
/// kernel against the symbolic t_ik(z,0) of the decoupled path.
inline double finite_difference_check(const DenseKernel& dk, const MetricData& md,
                                      const std::vector<std::vector<std::complex<double>>>& zs,
                                      double h) {
    const std::size_t n = dk.D.dim();
    double worst = 0.0;
    auto logK = [&](const std::vector<std::complex<double>>& z,
                    const std::vector<std::complex<double>>& w) {
        return std::log((dk.monomial_vector(w).adjoint() * dk.gram_inv * dk.monomial_vector(z))(0));
    };
    for (const auto& z : zs) {
        std::vector<std::complex<double>> w0(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                auto zp = z, zm = z;
                zp[k] += h;
                zm[k] -= h;
                auto wp = w0, wm = w0;
                wp[i] += h;
                wm[i] -= h;
                // real steps in w_i estimate the wbar_i derivative of the
                // anti-holomorphic dependence
                std::complex<double> fd =
                    (logK(zp, wp) - logK(zp, wm) - logK(zm, wp) + logK(zm, wm)) / (4.0 * h * h);
                std::complex<double> sym = md.T_section[i][k].evaluate(z);
                worst = std::max(worst, std::abs(fd - sym));
            }
    }
    return worst;
}

}  // namespace qrd
