#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qrd/fixtures.hpp"
#include "qrd/resonance.hpp"

using namespace qrd;

namespace {
ValidityCertificate cert_of(const WeightMatrix& M) {
    return std::get<ValidityCertificate>(validate_action(M));
}
}  // namespace

TEST_CASE("enumerate_weight_class vs brute force") {
    WeightMatrix M({{1}, {2}});
    auto c = cert_of(M);
    CHECK(enumerate_weight_class(M, c, {2}) ==
          std::vector<MultiIndex>({MultiIndex{0, 1}, MultiIndex{2, 0}}));
    CHECK(enumerate_weight_class(M, c, {0}) == std::vector<MultiIndex>({MultiIndex{0, 0}}));
    CHECK(enumerate_weight_class(M, c, {-1}).empty());

    WeightMatrix M3({{1, 0}, {0, 1}, {1, 1}});
    auto c3 = cert_of(M3);
    CHECK(enumerate_weight_class(M3, c3, {1, 1}) ==
          std::vector<MultiIndex>({MultiIndex{0, 0, 1}, MultiIndex{1, 1, 0}}));

    std::mt19937_64 rng(3);
    for (int t = 0; t < 60; ++t) {
        auto [M_rand, p] = random_valid_profile(rng, 4, 2);
        std::uniform_int_distribution<std::int64_t> dw(-4, 6);
        std::vector<std::int64_t> w(M_rand.r());
        for (auto& x : w) x = dw(rng);
        std::int64_t budget = 0;
        for (std::size_t j = 0; j < w.size(); ++j) budget += w[j] * p.cert.c[j];
        auto fast = enumerate_weight_class(M_rand, p.cert, w);
        auto slow = oracle::brute_force_weight_class(M_rand, w, std::max<std::int64_t>(budget, 0));
        CHECK(fast == slow);
    }
}

TEST_CASE("resonance_profile examples") {
    auto p = resonance_profile(WeightMatrix({{1}, {2}}));
    CHECK(p.sets[0].elements == std::vector<MultiIndex>({MultiIndex{1, 0}}));
    CHECK(p.sets[1].elements == std::vector<MultiIndex>({MultiIndex{0, 1}, MultiIndex{2, 0}}));
    CHECK(p.sets[0].mu_i == 1);
    CHECK(p.sets[1].mu_i == 2);
    CHECK(p.mu == 2);
    CHECK(p.order_relation == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
    CHECK(p.proper_ordering == std::vector<std::size_t>({0, 1}));

    // duplicate weights: identical sets, no mutual relation
    auto pd = resonance_profile(WeightMatrix({{1}, {1}}));
    CHECK(pd.sets[0].elements == pd.sets[1].elements);
    CHECK(pd.sets[0].elements == std::vector<MultiIndex>({MultiIndex{0, 1}, MultiIndex{1, 0}}));
    CHECK(pd.mu == 1);
    CHECK(pd.order_relation.empty());

    auto p3 = resonance_profile(WeightMatrix({{1}, {2}, {3}}));
    CHECK(p3.sets[2].elements == std::vector<MultiIndex>({MultiIndex{0, 0, 1}, MultiIndex{1, 1, 0},
                                                          MultiIndex{3, 0, 0}}));
    CHECK(p3.sets[2].mu_i == 3);
    CHECK(p3.mu == 3);
    CHECK(p3.related(0, 1));
    CHECK(p3.related(0, 2));
    CHECK(p3.related(1, 2));

    CHECK_THROWS_AS(resonance_profile(WeightMatrix({{1}, {-1}})), InvalidActionError);
}

TEST_CASE("resonance orders for shear weights (1,k)") {
    for (std::int64_t k : {2, 3, 5}) {
        auto p = resonance_profile(WeightMatrix({{1}, {k}}));
        CHECK(p.mu == k);
        std::vector<MultiIndex> want{MultiIndex{0, 1}, MultiIndex{k, 0}};
        CHECK(p.sets[1].elements == want);
        CHECK(oracle::brute_force_weight_class(p.M, {k}, 10) == want);
    }
}

TEST_CASE("check_antisymmetry") {
    CHECK(check_antisymmetry(WeightMatrix({{1}, {2}})).pass);
    auto v = check_antisymmetry(WeightMatrix({{2}, {3}}));
    CHECK(v.pass);
    auto p23 = resonance_profile(WeightMatrix({{2}, {3}}));
    CHECK(p23.order_relation.empty());
    CHECK(p23.sets[1].elements == std::vector<MultiIndex>({MultiIndex{0, 1}}));

    CHECK_THROWS(check_antisymmetry(WeightMatrix({{1}, {1}})));
    CHECK_THROWS_AS(check_antisymmetry(WeightMatrix({{1}, {-1}})), InvalidActionError);
}

TEST_CASE("build_gamma formula and invariance") {
    CHECK(build_gamma(MultiIndex{2, 0}, MultiIndex{0, 2}, 0, 1) == MultiIndex{3, 0});
    CHECK(build_gamma(MultiIndex{1, 0, 1}, MultiIndex{0, 2, 0}, 0, 1) == MultiIndex{1, 0, 2});
    CHECK(build_gamma(MultiIndex{4, 0, 1}, MultiIndex{0, 1, 2}, 0, 1) == MultiIndex{3, 0, 3});
    CHECK_THROWS(build_gamma(MultiIndex{0, 1}, MultiIndex{0, 1}, 0, 1));
    // alpha = e_i, beta = e_j (equal weights) telescopes to zero: rejected
    CHECK_THROWS(build_gamma(MultiIndex{1, 0}, MultiIndex{0, 1}, 0, 1));

    // whenever alpha has the weight of row j and beta the weight of row i,
    // gamma annihilates every weight column
    std::mt19937_64 rng(5);
    int found = 0;
    for (int t = 0; t < 4000 && found < 25; ++t) {
        auto M = random_weight_matrix(rng, 2 + t % 3, 1 + t % 2);
        std::size_t n = M.n();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                for (auto& alpha : multi_indices_up_to(n, 3)) {
                    if (alpha[i] < 1 || alpha[j] != 0 || alpha.total_degree() < 2) continue;
                    if (M.weight_of_monomial(alpha) != M.row(j)) continue;
                    for (auto& beta : multi_indices_up_to(n, 3)) {
                        if (beta[j] < 1 || beta[i] != 0 || beta.total_degree() < 2) continue;
                        if (M.weight_of_monomial(beta) != M.row(i)) continue;
                        auto g = build_gamma(alpha, beta, i, j);
                        CHECK_FALSE(g.is_zero());
                        for (auto w : M.weight_of_monomial(g)) CHECK(w == 0);
                        CHECK(g.total_degree() >= 2);
                        ++found;
                    }
                }
            }
    }
    CHECK(found >= 25);
}

TEST_CASE("antisymmetry fuzzing with certificate monotonicity") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 300; ++t) {
        auto [M, p] = random_valid_profile(rng, 5, 2);
        for (auto& [i, j] : p.order_relation) {
            CHECK_FALSE(p.related(j, i));
            if (M.row(i) != M.row(j))
                CHECK(M.row_dot(i, p.cert.c) < M.row_dot(j, p.cert.c));
        }
        // e_i membership and mu_i >= 1
        for (std::size_t i = 0; i < M.n(); ++i) {
            auto ei = MultiIndex::unit(M.n(), i);
            auto& E = p.sets[i].elements;
            CHECK(std::find(E.begin(), E.end(), ei) != E.end());
            CHECK(p.sets[i].mu_i >= 1);
        }
    }
}
