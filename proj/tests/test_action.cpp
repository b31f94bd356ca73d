#include <doctest.h>

#include <random>

#include "qrd/fixtures.hpp"
#include "qrd/weights.hpp"

using namespace qrd;

TEST_CASE("validate_action on known matrices") {
    auto v1 = validate_action(WeightMatrix({{1}, {2}}));
    REQUIRE(is_valid(v1));
    CHECK(std::get<ValidityCertificate>(v1).c == std::vector<std::int64_t>{1});

    auto v2 = validate_action(WeightMatrix({{1}, {-1}}));
    REQUIRE_FALSE(is_valid(v2));
    CHECK(std::get<InvalidityCertificate>(v2).gamma == MultiIndex{1, 1});

    auto v3 = validate_action(WeightMatrix({{1, 0}, {0, 1}, {1, 1}}));
    REQUIRE(is_valid(v3));
    auto c = std::get<ValidityCertificate>(v3).c;
    CHECK(c == std::vector<std::int64_t>{1, 1});

    auto v4 = validate_action(WeightMatrix({{0}, {1}}));
    REQUIRE_FALSE(is_valid(v4));
    CHECK(std::get<InvalidityCertificate>(v4).gamma == MultiIndex{1, 0});
}

TEST_CASE("returned certificates re-verify exactly, never both") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 400; ++t) {
        auto M = random_weight_matrix(rng, 1 + t % 5, 1 + t % 2);
        auto v = validate_action(M);
        if (is_valid(v)) {
            CHECK(std::get<ValidityCertificate>(v).verify(M));
            // dual side must be empty: no small invariant exponent exists
            for (auto& a : multi_indices_up_to(M.n(), 4)) {
                if (a.is_zero()) continue;
                CHECK_FALSE(InvalidityCertificate{a}.verify(M));
            }
        } else {
            CHECK(std::get<InvalidityCertificate>(v).verify(M));
        }
    }
}

TEST_CASE("apply_action examples") {
    WeightMatrix M({{1}, {2}});
    auto z = apply_action(M, {{1.0, 0.0}}, {{0.3, 0.0}, {0.4, 0.0}});
    CHECK(z[0].real() == doctest::Approx(0.3));
    CHECK(z[1].real() == doctest::Approx(0.4));

    z = apply_action(M, {{-1.0, 0.0}}, {{1.0, 0.0}, {1.0, 0.0}});
    CHECK(z[0].real() == doctest::Approx(-1.0));
    CHECK(z[1].real() == doctest::Approx(1.0));

    WeightMatrix M3({{1, 0}, {0, 1}, {1, 1}});
    std::complex<double> I{0.0, 1.0};
    z = apply_action(M3, {I, {-1.0, 0.0}}, {{1, 0}, {1, 0}, {1, 0}});
    CHECK(std::abs(z[0] - I) < 1e-12);
    CHECK(std::abs(z[1] - std::complex<double>{-1.0, 0.0}) < 1e-12);
    CHECK(std::abs(z[2] - (-I)) < 1e-12);

    CHECK_THROWS(apply_action(M, {{2.0, 0.0}}, {{0, 0}, {0, 0}}));
}

TEST_CASE("action law: rho(lambda mu) = rho(lambda) rho(mu)") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        auto M = random_weight_matrix(rng, 1 + t % 4, 1 + t % 2);
        std::vector<std::complex<double>> la(M.r()), mu(M.r()), lamu(M.r());
        for (std::size_t j = 0; j < M.r(); ++j) {
            double a = 2 * M_PI * u(rng), b = 2 * M_PI * u(rng);
            la[j] = {std::cos(a), std::sin(a)};
            mu[j] = {std::cos(b), std::sin(b)};
            lamu[j] = la[j] * mu[j];
        }
        std::vector<std::complex<double>> z(M.n());
        for (auto& zi : z) zi = {u(rng) - 0.5, u(rng) - 0.5};
        auto lhs = apply_action(M, lamu, z);
        auto rhs = apply_action(M, la, apply_action(M, mu, z));
        for (std::size_t i = 0; i < M.n(); ++i) CHECK(std::abs(lhs[i] - rhs[i]) < 1e-12);
    }
}

TEST_CASE("weight_of_monomial") {
    WeightMatrix M({{1}, {2}});
    CHECK(M.weight_of_monomial(MultiIndex{2, 0}) == std::vector<std::int64_t>{2});
    CHECK(M.weight_of_monomial(MultiIndex{0, 0}) == std::vector<std::int64_t>{0});
    WeightMatrix M3({{1, 0}, {0, 1}, {1, 1}});
    CHECK(M3.weight_of_monomial(MultiIndex{1, 1, 0}) == std::vector<std::int64_t>({1, 1}));
    CHECK_THROWS(M.weight_of_monomial(MultiIndex{1}));
}

TEST_CASE("invariance detection for valid and invalid matrices") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        auto M = random_weight_matrix(rng, 1 + t % 4, 1 + t % 2);
        auto v = validate_action(M);
        if (is_valid(v)) {
            for (auto& a : multi_indices_up_to(M.n(), 3)) {
                if (a.is_zero()) continue;
                bool all_zero = true;
                for (auto w : M.weight_of_monomial(a)) all_zero = all_zero && w == 0;
                CHECK_FALSE(all_zero);
            }
        } else {
            auto w = M.weight_of_monomial(std::get<InvalidityCertificate>(v).gamma);
            for (auto x : w) CHECK(x == 0);
        }
    }
}
