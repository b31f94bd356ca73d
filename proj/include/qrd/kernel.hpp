#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qrd/moments.hpp"
#include "qrd/poly_map.hpp"

namespace qrd {

/// Monomials of one torus weight with their Gram matrix of moments and its
/// inverse; distinct weights are orthogonal, so the kernel splits over these.
struct WeightClassBasis {
    std::vector<std::int64_t> weight;
    std::vector<MultiIndex> monomials;
    Eigen::MatrixXcd gram;
    Eigen::MatrixXcd gram_inv;
    double condition = 1.0;
    double max_stderr = 0.0;

    std::optional<std::size_t> index_of(const MultiIndex& a) const {
        for (std::size_t k = 0; k < monomials.size(); ++k)
            if (monomials[k] == a) return k;
        return std::nullopt;
    }
    /// c_{alpha,beta} = (G^{-1})_{beta,alpha}
    std::complex<double> coeff(std::size_t alpha_idx, std::size_t beta_idx) const {
        return gram_inv(static_cast<Eigen::Index>(beta_idx), static_cast<Eigen::Index>(alpha_idx));
    }
};

struct KernelData {
    DomainSpec D;
    ResonanceProfile profile;
    std::vector<WeightClassBasis> classes;  // weight 0 first, then distinct m_i
    double K00 = 0.0;
    double vol = 0.0;

    const WeightClassBasis& class_for(const std::vector<std::int64_t>& w) const {
        for (const auto& c : classes)
            if (c.weight == w) return c;
        throw std::invalid_argument("KernelData: no class for requested weight");
    }

    /// K(z, w) from the class expansion.
    std::complex<double> eval(const std::vector<std::complex<double>>& z,
                              const std::vector<std::complex<double>>& w) const {
        std::complex<double> acc = 0.0;
        for (const auto& cl : classes) {
            const std::size_t m = cl.monomials.size();
            Eigen::VectorXcd mz(m), mw(m);
            for (std::size_t k = 0; k < m; ++k) {
                std::complex<double> tz = 1.0, tw = 1.0;
                for (std::size_t i = 0; i < z.size(); ++i)
                    for (std::int64_t e = 0; e < cl.monomials[k][i]; ++e) {
                        tz *= z[i];
                        tw *= w[i];
                    }
                mz(static_cast<Eigen::Index>(k)) = tz;
                mw(static_cast<Eigen::Index>(k)) = tw;
            }
            // sum_{a,b} c_{a,b} z^a conj(w)^b = mw^* G^{-1} mz
            acc += (mw.adjoint() * cl.gram_inv * mz)(0);
        }
        return acc;
    }
};

namespace detail {

inline WeightClassBasis build_class(const DomainSpec& D, const ResonanceProfile& p,
                                    const std::vector<std::int64_t>& w,
                                    std::optional<MomentMethod> method, std::uint64_t samples,
                                    std::uint64_t seed) {
    WeightClassBasis cl;
    cl.weight = w;
    cl.monomials = enumerate_weight_class(p.M, p.cert, w);
    const std::size_t m = cl.monomials.size();
    if (m == 0) throw std::logic_error("build_class: empty weight class");
    cl.gram.resize(m, m);

    bool mc = method && *method == MomentMethod::MonteCarlo;
    std::vector<std::pair<MultiIndex, MultiIndex>> probes;
    if (mc)
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) probes.emplace_back(cl.monomials[a], cl.monomials[b]);
    auto mc_vals = mc ? monte_carlo_moments(D, probes, samples, seed) : std::vector<MomentValue>{};

    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            auto mv = mc ? mc_vals[a * m + b]
                         : monomial_moment(D, cl.monomials[a], cl.monomials[b], method, samples, seed);
            cl.gram(a, b) = mv.value;
            cl.max_stderr = std::max(cl.max_stderr, mv.stderr_est);
        }
    // symmetrize against statistical noise
    cl.gram = ((cl.gram + cl.gram.adjoint()) / 2.0).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(cl.gram);
    double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
    if (lo <= 0 || hi / lo > 1e12)
        throw std::runtime_error("build_class: ill-conditioned Gram matrix (cond ~ " +
                                 std::to_string(lo > 0 ? hi / lo : -1.0) + ")");
    cl.condition = hi / lo;
    cl.gram_inv = cl.gram.ldlt().solve(Eigen::MatrixXcd::Identity(m, m));
    return cl;
}

}  // namespace detail

/// Assembles the weight-0 class and the classes of m_1..m_n; K(0,0) = 1/vol(D)
/// is recorded and cross-checked against the class-0 computation.
inline KernelData build_kernel(const DomainSpec& D, std::optional<MomentMethod> method = {},
                               std::uint64_t samples = 1u << 20, std::uint64_t seed = 1) {
    KernelData K{D, resonance_profile(D.weights()), {}, 0.0, 0.0};

    std::vector<std::vector<std::int64_t>> needed{std::vector<std::int64_t>(D.weights().r(), 0)};
    for (std::size_t i = 0; i < D.dim(); ++i) {
        auto w = D.weights().row(i);
        if (std::find(needed.begin(), needed.end(), w) == needed.end()) needed.push_back(w);
    }
    std::uint64_t k = 0;
    for (const auto& w : needed)
        K.classes.push_back(detail::build_class(D, K.profile, w, method, samples,
                                                mix_seed(seed, 1000 + k++)));

    K.vol = volume(D, method, samples, mix_seed(seed, 999)).value.real();
    const auto& c0 = K.classes.front();
    if (c0.monomials.size() != 1 || !c0.monomials[0].is_zero())
        throw std::logic_error("build_kernel: weight-0 class is not {0}; action invalid?");
    K.K00 = c0.gram_inv(0, 0).real();
    double rel = std::abs(K.K00 - 1.0 / K.vol) * K.vol;
    double tol = c0.max_stderr > 0 ? 3.0 * c0.max_stderr * K.K00 * K.K00 * K.vol + 1e-9 : 1e-9;
    if (rel > tol) throw std::logic_error("build_kernel: K(0,0) != 1/vol(D)");
    return K;
}

/// max_z |K(z,0) - K(0,0)| over the given samples. Zero by construction for
/// the decoupled expansion; the dense path provides the nontrivial version.
inline double kernel_at_zero_flatness(const KernelData& K,
                                      const std::vector<std::vector<std::complex<double>>>& zs) {
    double worst = 0.0;
    std::vector<std::complex<double>> origin(K.D.dim(), 0.0);
    for (const auto& z : zs) worst = std::max(worst, std::abs(K.eval(z, origin) - K.K00));
    return worst;
}

struct MetricData {
    Eigen::MatrixXcd T00;
    std::vector<std::complex<double>> tau;  // diagonal of T00
    std::vector<std::vector<FloatPoly>> T_section;  // T(z,0), entries t_ik
    std::vector<std::vector<FloatPoly>> N;          // T00^{-1} M(z)
    bool shape_ok = true;
    std::string shape_message;
};

namespace detail {

/// (1/K00) sum_{alpha in class(m_i)} c_{alpha, e_i} z^alpha — the polynomial
/// behind both the metric section row i and representative coordinates.
inline FloatPoly kernel_row_poly(const KernelData& K, std::size_t i) {
    const std::size_t n = K.D.dim();
    const auto& cl = K.class_for(K.D.weights().row(i));
    auto ei = cl.index_of(MultiIndex::unit(n, i));
    if (!ei) throw std::logic_error("kernel_row_poly: e_i missing from its weight class");
    FloatPoly p(n);
    for (std::size_t a = 0; a < cl.monomials.size(); ++a) {
        auto c = cl.coeff(a, *ei) / K.K00;
        if (c != std::complex<double>{0.0}) p.add_term(cl.monomials[a], c);
    }
    return p;
}

}  // namespace detail

/// T(z,0) from the class expansion: t_ik(z,0) = (1/K00) sum_{alpha in E_i}
/// c_{alpha,e_i} d_{z_k} z^alpha. Asserts the strict lower-triangular shape of
/// M(z) = T(z,0) - T(0,0) in proper order.
inline MetricData metric_data(const KernelData& K, double tol = 1e-9) {
    const std::size_t n = K.D.dim();
    const auto& p = K.profile;
    MetricData md;
    md.T00 = Eigen::MatrixXcd::Zero(n, n);
    md.T_section.assign(n, std::vector<FloatPoly>(n, FloatPoly(n)));

    for (std::size_t i = 0; i < n; ++i) {
        FloatPoly Pi = detail::kernel_row_poly(K, i);
        for (std::size_t k = 0; k < n; ++k) {
            md.T_section[i][k] = Pi.derivative(k);
            md.T00(i, k) = md.T_section[i][k].coefficient(MultiIndex(n));
        }
    }
    md.tau.resize(n);
    for (std::size_t i = 0; i < n; ++i) md.tau[i] = md.T00(i, i);

    // shape checks: T00 Hermitian PD; M(z) strictly lower triangular in the
    // proper ordering (positions), entries obeying alpha + e_k in E_i
    Eigen::MatrixXcd H = (md.T00 - md.T00.adjoint());
    if (H.norm() > tol * md.T00.norm()) {
        md.shape_ok = false;
        md.shape_message = "T(0,0) not Hermitian";
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(((md.T00 + md.T00.adjoint()) / 2.0).eval());
    if (es.eigenvalues().minCoeff() <= 0) {
        md.shape_ok = false;
        md.shape_message = "T(0,0) not positive definite";
    }
    bool distinct = true;
    for (std::size_t i = 0; i < n && distinct; ++i)
        for (std::size_t j = i + 1; j < n; ++j) distinct = distinct && p.M.row(i) != p.M.row(j);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            FloatPoly M_ik = md.T_section[i][k];
            M_ik.add_term(MultiIndex(n), -md.T00(i, k));
            if (M_ik.pruned(tol).is_zero()) continue;
            if (p.position_of(i) <= p.position_of(k)) {
                md.shape_ok = false;
                md.shape_message = "M(z) entry (" + std::to_string(i + 1) + "," +
                                   std::to_string(k + 1) + ") above the diagonal";
            }
        }
    if (distinct)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                if (i != k && std::abs(md.T00(i, k)) > tol) {
                    md.shape_ok = false;
                    md.shape_message = "T(0,0) not diagonal with distinct weights";
                }

    // N(z) = T00^{-1} M(z)
    Eigen::MatrixXcd Tinv = md.T00.inverse();
    md.N.assign(n, std::vector<FloatPoly>(n, FloatPoly(n)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            FloatPoly acc(n);
            for (std::size_t l = 0; l < n; ++l) {
                FloatPoly M_lk = md.T_section[l][k];
                M_lk.add_term(MultiIndex(n), -md.T00(l, k));
                acc = acc + M_lk * Tinv(i, l);
            }
            md.N[i][k] = acc.pruned(tol * 1e-3);
        }
    return md;
}

struct RepCoords {
    FloatMap sigma0{0};
    double coeff_error_bar = 0.0;     // propagated from moment stderr
    double nonresonant_mass = 0.0;    // largest coefficient outside E_i
    double jac_identity_error = 0.0;  // Jac_sigma vs T00^{-1} T(z,0)
};

/// sigma_0 = T(0,0)^{-1} v(z) with v_i(z) = (1/K00) sum_{alpha in E_i}
/// c_{alpha,e_i} z^alpha. Checks sigma_0(0) = 0, identity linear part and the
/// Jacobian identity as polynomial statements.
inline RepCoords rep_coords(const KernelData& K, const MetricData& md, double tol = 1e-9) {
    const std::size_t n = K.D.dim();
    RepCoords rc;
    Eigen::MatrixXcd Tinv = md.T00.inverse();

    std::vector<FloatPoly> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(detail::kernel_row_poly(K, i));

    std::vector<FloatPoly> comps(n, FloatPoly(n));
    for (std::size_t i = 0; i < n; ++i) {
        FloatPoly acc(n);
        for (std::size_t l = 0; l < n; ++l) acc = acc + v[l] * Tinv(i, l);
        comps[i] = acc;
    }
    rc.sigma0 = FloatMap(std::move(comps));

    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(rc.sigma0.component(i).coefficient(MultiIndex(n))) > tol)
            throw std::logic_error("rep_coords: sigma_0(0) != 0");
        for (std::size_t k = 0; k < n; ++k) {
            auto lin = rc.sigma0.component(i).coefficient(MultiIndex::unit(n, k));
            double dev = std::abs(lin - (i == k ? 1.0 : 0.0));
            if (dev > std::max(tol, 10 * rc.coeff_error_bar))
                rc.jac_identity_error = std::max(rc.jac_identity_error, dev);
        }
        const auto& E = K.profile.sets[i].elements;
        for (const auto& [a, c] : rc.sigma0.component(i).terms())
            if (std::find(E.begin(), E.end(), a) == E.end())
                rc.nonresonant_mass = std::max(rc.nonresonant_mass, std::abs(c));
    }

    // Jac_sigma(z) = T00^{-1} T(z,0) as a polynomial identity
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            FloatPoly lhs = rc.sigma0.component(i).derivative(k);
            FloatPoly rhs(n);
            for (std::size_t l = 0; l < n; ++l) rhs = rhs + md.T_section[l][k] * Tinv(i, l);
            FloatPoly diff = lhs - rhs;
            for (const auto& [a, c] : diff.terms())
                rc.jac_identity_error = std::max(rc.jac_identity_error, std::abs(c));
        }

    // crude first-order error bars from Monte Carlo moment noise
    for (const auto& cl : K.classes)
        if (cl.max_stderr > 0) {
            double gnorm = cl.gram_inv.norm();
            rc.coeff_error_bar =
                std::max(rc.coeff_error_bar, gnorm * gnorm * cl.max_stderr / K.K00);
        }
    return rc;
}

}  // namespace qrd
