#include <doctest.h>

#include "qrd/fixtures.hpp"
#include "qrd/verify.hpp"

using namespace qrd;

TEST_CASE("sample_domain_points stays inside the shrunken domain") {
    auto D = shear_ball_domain(2);
    auto zs = sample_domain_points(D, 200, 4);
    CHECK(zs.size() == 200);
    for (const auto& z : zs) CHECK(D.contains(z));
}

TEST_CASE("snap_to_resonant") {
    auto p = resonance_profile(WeightMatrix({{1}, {2}}));
    FloatMap s = FloatMap::identity(2);
    s.component(1).add_term(MultiIndex{2, 0}, {0.5, 0.0});
    s.component(0).add_term(MultiIndex{1, 0}, {1e-12, 0.0});   // tiny linear jitter
    s.component(1).add_term(MultiIndex{1, 1}, {1e-12, 1e-13});  // tiny non-resonant noise
    auto r = snap_to_resonant(s, p, 1e-9);
    CHECK(r.map().component(1).coefficient(MultiIndex{2, 0}) == std::complex<double>(0.5));
    CHECK(r.map().component(1).coefficient(MultiIndex{1, 1}) == std::complex<double>(0.0));
    CHECK(r.map().component(0).coefficient(MultiIndex{1, 0}) == std::complex<double>(1.0));

    FloatMap bad = FloatMap::identity(2);
    bad.component(1).add_term(MultiIndex{1, 1}, {1e-3, 0.0});  // real non-resonant mass
    CHECK_THROWS(snap_to_resonant(bad, p, 1e-9));
}

TEST_CASE("Cartan case: circular domain, f equals its own linear part") {
    auto B = DomainSpec::ball(2).with_weights(WeightMatrix({{1}, {1}}));
    auto f = FloatMap::linear({{{0.0, 1.0}, {0.0, 0.0}}, {{0.0, 0.0}, {-1.0, 0.0}}});
    auto rep = verify_theorem(B, B, f, 300, 1e-9, 2);
    CHECK(rep.pass);
    CHECK(rep.residual < 1e-12);
    CHECK(rep.deg_sigma1 == 1);
    CHECK(rep.mu1 == 1);
}

TEST_CASE("shear conjugate of a diagonal map factors through sigma") {
    auto D = shear_ball_domain(2);
    // f = phi_2 o diag(i,-1) o phi_2^{-1}, which collapses to the linear map
    auto t = invert_resonant(shear_map(2));
    auto J = ExactMap::diagonal({GaussianRational::i(), GaussianRational(-1)});
    auto f = factor_biholomorphism(t, t, J).to_floating();

    auto rep = verify_theorem(D, D, f, 500, 1e-7, 3);
    CHECK(rep.pass);
    CHECK(rep.residual < 1e-9);
    CHECK(rep.deg_sigma1 == 2);
    CHECK(rep.deg_sigma2 == 2);
    CHECK(rep.mu1 == 2);
    CHECK(rep.degrees_ok);
    CHECK(rep.lf_regression_error < 1e-7);
    // sigma returned by the pipeline is the inverse shear
    CHECK(std::abs(rep.sigma1.component(1).coefficient(MultiIndex{2, 0}) -
                   std::complex<double>(-1.0)) < 1e-9);
}

TEST_CASE("ball-to-shear-domain map verifies across distinct domains") {
    auto B = DomainSpec::ball(2, WeightMatrix({{1}, {2}}));
    auto D = shear_ball_domain(2);
    auto f = shear_map(2).map().to_floating();  // phi_2 : B -> D, linear part = id
    auto rep = verify_theorem(B, D, f, 500, 1e-7, 5);
    CHECK(rep.pass);
    CHECK(rep.residual < 1e-9);
    CHECK(rep.lf_regression_error < 1e-6);
}

TEST_CASE("perturbing sigma breaks the factorization") {
    auto D = shear_ball_domain(2);
    // f = phi_2 o diag(2,3) o phi_2^{-1} = (2 z1, 3 z2 + z1^2): the
    // factorization through sigma = phi_2^{-1} holds as a polynomial identity
    auto t = invert_resonant(shear_map(2));
    auto J = ExactMap::diagonal({GaussianRational(2), GaussianRational(3)});
    auto f = factor_biholomorphism(t, t, J).to_floating();
    CHECK(verify_theorem(D, D, f, 300, 1e-7, 7).pass);
    CHECK(perturbed_residual(D, D, f) > 1e-3);
}

TEST_CASE("wrong weights cannot fake a verification") {
    // phi_2 treated with weights (1,3): its quadratic term is non-resonant, so
    // no degree-3 sigma can reproduce it and the verdict must be negative
    auto B = DomainSpec::ball(2, WeightMatrix({{1}, {3}}));
    auto D = shear_ball_domain(2).with_weights(WeightMatrix({{1}, {3}}));
    auto f = shear_map(2).map().to_floating();
    bool negative = false;
    try {
        auto rep = verify_theorem(B, D, f, 100, 1e-7, 9);
        negative = !rep.pass && rep.residual > 1e-3;
    } catch (const std::exception&) {
        negative = true;  // rejected outright while snapping sigma
    }
    CHECK(negative);
}
