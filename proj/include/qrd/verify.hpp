#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qrd/dense.hpp"
#include "qrd/kernel.hpp"

namespace qrd {

/// Uniform samples from the shrunken copy shrink*D, by rejection in the
/// bounding polydisc.
inline std::vector<std::vector<std::complex<double>>> sample_domain_points(
    const DomainSpec& D, std::size_t count, std::uint64_t seed, double shrink = 0.9) {
    std::vector<std::vector<std::complex<double>>> out;
    std::mt19937_64 rng(mix_seed(seed, 17));
    std::size_t guard = 0;
    while (out.size() < count) {
        if (++guard > 1000 * count + 1000)
            throw std::runtime_error("sample_domain_points: acceptance too low");
        auto z = uniform_polydisc(rng, D.bounding_radius());
        auto scaled = z;
        for (auto& c : scaled) c /= shrink;
        if (D.contains(scaled)) out.push_back(z);
    }
    return out;
}

/// Projects a numerically computed sigma onto its resonant support: the e_i
/// coefficient is set to exactly 1, resonant terms are kept, and anything
/// non-resonant must already be below tol.
inline ResonantMap<std::complex<double>> snap_to_resonant(const FloatMap& sigma,
                                                          const ResonanceProfile& profile,
                                                          double tol) {
    const std::size_t n = sigma.dim();
    std::vector<FloatPoly> g(n, FloatPoly(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto& E = profile.sets[i].elements;
        for (const auto& [a, c] : sigma.component(i).terms()) {
            if (a == MultiIndex::unit(n, i)) {
                if (std::abs(c - 1.0) > tol)
                    throw std::runtime_error("snap_to_resonant: linear part deviates from identity");
                continue;
            }
            bool resonant =
                a.total_degree() >= 2 && std::find(E.begin(), E.end(), a) != E.end();
            if (resonant)
                g[i].add_term(a, c);
            else if (std::abs(c) > tol)
                throw std::runtime_error("snap_to_resonant: non-resonant coefficient " +
                                         std::to_string(std::abs(c)) + " at " + a.str() +
                                         " exceeds tolerance");
        }
    }
    return ResonantMap<std::complex<double>>::from_nonlinear(std::move(g), profile);
}

struct TheoremReport {
    double residual = 0.0;
    std::vector<std::complex<double>> worst_point;
    std::int64_t deg_sigma1 = 0, deg_sigma2 = 0, deg_inv_sigma1 = 0, deg_inv_sigma2 = 0;
    std::int64_t mu1 = 0, mu2 = 0;
    double lf_regression_error = 0.0;  // regressed L_f vs linear_part(f)
    bool degrees_ok = false;
    bool pass = false;
    FloatMap sigma1{0}, sigma2{0};
};

namespace detail {

inline FloatMap rep_coords_map(const DomainSpec& D, double tol) {
    auto K = build_kernel(D);
    auto md = metric_data(K, tol);
    return rep_coords(K, md, tol).sigma0;
}

}  // namespace detail

/// Theorem check: f = (sigma^2)^{-1} o J_f o sigma^1 on interior samples of
/// D1, plus the degree bounds deg sigma, deg sigma^{-1} <= mu.
inline TheoremReport verify_theorem(const DomainSpec& D1, const DomainSpec& D2, const FloatMap& f,
                                    std::size_t nsamples = 1000, double tol = 1e-7,
                                    std::uint64_t seed = 1) {
    if (!f.fixes_origin()) throw std::invalid_argument("verify_theorem: f does not fix the origin");

    TheoremReport rep;
    double snap_tol = tol * 0.1;
    auto s1f = detail::rep_coords_map(D1, snap_tol);
    auto s2f = detail::rep_coords_map(D2, snap_tol);
    auto p1 = resonance_profile(D1.weights());
    auto p2 = resonance_profile(D2.weights());
    auto s1 = snap_to_resonant(s1f, p1, snap_tol);
    auto s2 = snap_to_resonant(s2f, p2, snap_tol);
    auto t1 = invert_resonant(s1, 1e-13);
    auto t2 = invert_resonant(s2, 1e-13);

    rep.sigma1 = s1.map();
    rep.sigma2 = s2.map();
    rep.mu1 = p1.mu;
    rep.mu2 = p2.mu;
    rep.deg_sigma1 = s1.degree();
    rep.deg_sigma2 = s2.degree();
    rep.deg_inv_sigma1 = t1.degree();
    rep.deg_inv_sigma2 = t2.degree();
    rep.degrees_ok = rep.deg_sigma1 <= rep.mu1 && rep.deg_inv_sigma1 <= rep.mu1 &&
                     rep.deg_sigma2 <= rep.mu2 && rep.deg_inv_sigma2 <= rep.mu2;

    auto J = f.linear_part();
    auto g = t2.map().compose(J.compose(s1.map()));

    auto zs = sample_domain_points(D1, nsamples, seed);
    const std::size_t n = D1.dim();
    for (const auto& z : zs) {
        auto fz = f.evaluate(z);
        auto gz = g.evaluate(z);
        double d = 0;
        for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(fz[i] - gz[i]));
        if (d >= rep.residual) {
            rep.residual = d;
            rep.worst_point = z;
        }
    }

    // regress L from sigma^2(f(z)) ~ L sigma^1(z); it must be the linear part
    Eigen::MatrixXcd A(zs.size(), n), B(zs.size(), n);
    for (std::size_t s = 0; s < zs.size(); ++s) {
        auto x = s1.map().evaluate(zs[s]);
        auto y = s2.map().evaluate(f.evaluate(zs[s]));
        for (std::size_t i = 0; i < n; ++i) {
            A(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(i)) = x[i];
            B(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(i)) = y[i];
        }
    }
    Eigen::MatrixXcd Lt = A.colPivHouseholderQr().solve(B);  // A * L^T = B
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            auto want = J.component(i).coefficient(MultiIndex::unit(n, k));
            rep.lf_regression_error = std::max(
                rep.lf_regression_error,
                std::abs(Lt(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) - want));
        }

    rep.pass = rep.residual <= tol && rep.degrees_ok;
    return rep;
}

/// Sensitivity control: multiply one nonlinear coefficient of sigma^2 by
/// (1 + bump) and report the inflated residual. Guards against vacuous passes.
inline double perturbed_residual(const DomainSpec& D1, const DomainSpec& D2, const FloatMap& f,
                                 double bump = 0.1, std::size_t nsamples = 200,
                                 std::uint64_t seed = 1) {
    double snap_tol = 1e-8;
    auto s1 = snap_to_resonant(detail::rep_coords_map(D1, snap_tol),
                               resonance_profile(D1.weights()), snap_tol);
    auto p2 = resonance_profile(D2.weights());
    auto s2f = detail::rep_coords_map(D2, snap_tol);

    // perturb the largest nonlinear coefficient of sigma^2
    const std::size_t n = D2.dim();
    std::size_t bi = 0;
    MultiIndex ba;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [a, c] : s2f.component(i).terms())
            if (a.total_degree() >= 2 && std::abs(c) > best) {
                best = std::abs(c);
                bi = i;
                ba = a;
            }
    if (best < 0) throw std::runtime_error("perturbed_residual: sigma^2 has no nonlinear term");
    auto c = s2f.component(bi).coefficient(ba);
    s2f.component(bi).add_term(ba, c * bump);

    auto s2 = snap_to_resonant(s2f, p2, snap_tol);
    auto t2 = invert_resonant(s2, 1e-13);
    auto g = t2.map().compose(f.linear_part().compose(s1.map()));

    double worst = 0.0;
    for (const auto& z : sample_domain_points(D1, nsamples, seed)) {
        auto fz = f.evaluate(z);
        auto gz = g.evaluate(z);
        for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(fz[i] - gz[i]));
    }
    return worst;
}

}  // namespace qrd
