#include <doctest.h>

#include <random>

#include "qrd/dense.hpp"
#include "qrd/fixtures.hpp"
#include "qrd/kernel.hpp"

using namespace qrd;

namespace {

// closed-form metric of the unit ball B^n at (z, w):
// t_ik = (n+1)(delta_ik / u + z_i conj(w_k) / u^2), u = 1 - <z, w>
Eigen::MatrixXcd ball_metric(const std::vector<std::complex<double>>& z,
                             const std::vector<std::complex<double>>& w) {
    const std::size_t n = z.size();
    std::complex<double> u = 1.0;
    for (std::size_t j = 0; j < n; ++j) u -= z[j] * std::conj(w[j]);
    Eigen::MatrixXcd T(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            T(i, k) = static_cast<double>(n + 1) *
                      ((i == k ? 1.0 / u : 0.0) + z[i] * std::conj(w[k]) / (u * u));
    return T;
}

std::vector<std::complex<double>> random_point(std::mt19937_64& rng, std::size_t n, double r) {
    std::uniform_real_distribution<double> d(-r, r);
    std::vector<std::complex<double>> z(n);
    for (auto& c : z) c = {d(rng), d(rng)};
    return z;
}

}  // namespace

TEST_CASE("ball kernel: K00, coefficients, flatness") {
    auto K = build_kernel(DomainSpec::ball(2));
    CHECK(std::abs(K.K00 - 2.0 / (M_PI * M_PI)) < 1e-12);
    CHECK(std::abs(K.vol - M_PI * M_PI / 2.0) < 1e-12);

    // K(z, w) = (2/pi^2) / (1 - <z,w>)^3 at a sample point
    std::vector<std::complex<double>> z{{0.3, 0.1}, {0.0, -0.2}};
    std::vector<std::complex<double>> w{{0.1, 0.0}, {0.2, 0.1}};
    std::complex<double> u = 1.0 - (z[0] * std::conj(w[0]) + z[1] * std::conj(w[1]));
    // the class expansion only carries weights 0, e_1, e_2; compare against
    // the same truncation of the closed form
    auto dk = build_dense_kernel(DomainSpec::ball(2), 8);
    CHECK(std::abs(dk.eval(z, w) - 2.0 / (M_PI * M_PI) / (u * u * u)) < 1e-6);

    std::mt19937_64 rng(3);
    std::vector<std::vector<std::complex<double>>> zs;
    for (int t = 0; t < 25; ++t) zs.push_back(random_point(rng, 2, 0.4));
    CHECK(kernel_at_zero_flatness(K, zs) < 1e-12);

    // dense path: K(z,0) is genuinely flat, not flat by construction
    auto rep = dense_cross_check(DomainSpec::ball(2), 6);
    CHECK(rep.flatness < 1e-10);
    CHECK(rep.sigma_discrepancy < 1e-10);
    CHECK(rep.nonresonant_mass < 1e-10);
}

TEST_CASE("ball metric and representative coordinates are the identity data") {
    auto K = build_kernel(DomainSpec::ball(2));
    auto md = metric_data(K);
    CHECK(md.shape_ok);
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            CHECK(std::abs(md.T00(i, k) - (i == k ? 3.0 : 0.0)) < 1e-12);

    auto rc = rep_coords(K, md);
    CHECK(rc.nonresonant_mass < 1e-12);
    CHECK(rc.jac_identity_error < 1e-12);
    auto id = FloatMap::identity(2);
    for (std::size_t i = 0; i < 2; ++i) {
        auto diff = rc.sigma0.component(i) - id.component(i);
        for (const auto& [a, c] : diff.terms()) CHECK(std::abs(c) < 1e-12);
    }
}

TEST_CASE("egg metric is diagonal with distinct weights") {
    auto E = DomainSpec::egg({1, 3}, WeightMatrix({{1}, {3}}));
    auto K = build_kernel(E);
    auto md = metric_data(K);
    CHECK(md.shape_ok);
    CHECK(std::abs(md.T00(0, 1)) < 1e-12);
    CHECK(std::abs(md.T00(1, 0)) < 1e-12);
    CHECK(md.T00(0, 0).real() > 0.0);
    CHECK(md.T00(1, 1).real() > 0.0);

    // representative coordinates of the egg itself are the identity
    auto rc = rep_coords(K, md);
    for (std::size_t i = 0; i < 2; ++i)
        for (const auto& [a, c] : rc.sigma0.component(i).terms()) {
            if (a == MultiIndex::unit(2, i))
                CHECK(std::abs(c - 1.0) < 1e-12);
            else
                CHECK(std::abs(c) < 1e-12);
        }
}

TEST_CASE("shear domains: sigma_0 recovers the inverse shear") {
    for (std::int64_t k : {2, 3}) {
        auto D = shear_ball_domain(k);
        auto K = build_kernel(D);
        auto md = metric_data(K);
        CHECK(md.shape_ok);
        auto rc = rep_coords(K, md);
        CHECK(rc.nonresonant_mass < 1e-10);
        CHECK(rc.jac_identity_error < 1e-10);

        // sigma_0 = phi_k^{-1} = (z1, z2 - z1^k)
        auto expected = invert_resonant(shear_map(k)).map().to_floating();
        for (std::size_t i = 0; i < 2; ++i) {
            auto diff = rc.sigma0.component(i) - expected.component(i);
            for (const auto& [a, c] : diff.terms()) CHECK(std::abs(c) < 1e-10);
        }

        // the metric section picks up z1-dependence only below the diagonal
        for (const auto& [a, c] : md.T_section[1][0].terms())
            if (a.total_degree() > 0) CHECK(a[1] == 0);  // depends on z1 alone

        auto rep = dense_cross_check(D, k + 2);
        CHECK(rep.sigma_discrepancy < 1e-9);
        CHECK(rep.nonresonant_mass < 1e-9);
        CHECK(rep.flatness < 1e-9);
    }
}

TEST_CASE("Monte Carlo kernel stays near the exact one") {
    auto D = shear_ball_domain(2);
    auto K_mc = build_kernel(D, MomentMethod::MonteCarlo, 1u << 19, 21);
    auto K = build_kernel(D);
    CHECK(std::abs(K_mc.K00 - K.K00) < 0.05 * K.K00);
    auto md = metric_data(K_mc, 1e-2);
    auto rc = rep_coords(K_mc, md, 1e-2);
    CHECK(rc.coeff_error_bar > 0.0);
    // the shear coefficient is recovered within a loose statistical margin
    auto c = rc.sigma0.component(1).coefficient(MultiIndex{2, 0});
    CHECK(std::abs(c - std::complex<double>(-1.0)) < 0.1);
}

TEST_CASE("finite differences of log K confirm the symbolic metric section") {
    auto dk = build_dense_kernel(DomainSpec::ball(2), 10);
    auto K = build_kernel(DomainSpec::ball(2));
    auto md = metric_data(K);
    std::mt19937_64 rng(7);
    std::vector<std::vector<std::complex<double>>> zs;
    for (int t = 0; t < 10; ++t) zs.push_back(random_point(rng, 2, 0.25));

    double e1 = finite_difference_check(dk, md, zs, 1e-2);
    double e2 = finite_difference_check(dk, md, zs, 5e-3);
    CHECK(e1 < 1e-2);
    // second-order scheme: halving h divides the error by about four
    CHECK(e2 < e1);
    CHECK(e1 / e2 > 3.0);
    CHECK(e1 / e2 < 5.5);
}

TEST_CASE("metric transformation rule under the shear biholomorphism") {
    // T_B(z,w) = Jac_phi(w)^H T_D(phi z, phi w) Jac_phi(z) with D = phi(B)
    auto D = shear_ball_domain(2);
    auto dk = build_dense_kernel(D, 12);
    auto phi = shear_map(2).map().to_floating();

    std::mt19937_64 rng(11);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        auto z = random_point(rng, 2, 0.15);
        auto w = random_point(rng, 2, 0.15);
        auto fz = phi.evaluate(z), fw = phi.evaluate(w);
        Eigen::MatrixXcd Jz(2, 2), Jw(2, 2);
        Jz << 1.0, 0.0, 2.0 * z[0], 1.0;
        Jw << 1.0, 0.0, 2.0 * w[0], 1.0;
        Eigen::MatrixXcd lhs = ball_metric(z, w);
        Eigen::MatrixXcd rhs = Jw.adjoint() * dk.metric_at(fz, fw) * Jz;
        worst = std::max(worst, (lhs - rhs).norm());
    }
    CHECK(worst < 1e-7);
}

TEST_CASE("dense cross-check rejects a truncation below the resonance order") {
    CHECK_THROWS(dense_cross_check(shear_ball_domain(3), 2));
}
