#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qrd/verify.hpp"

namespace qrd {

/// phi_k(z1, z2) = (z1, z2 + z1^k), resonant for weights (1, k).
inline ResonantMap<GaussianRational> shear_map(std::int64_t k) {
    auto profile = resonance_profile(WeightMatrix({{1}, {k}}));
    std::vector<ExactPoly> g(2, ExactPoly(2));
    g[1].add_term(MultiIndex{k, 0}, GaussianRational(1));
    return ResonantMap<GaussianRational>::from_nonlinear(std::move(g), profile);
}

inline DomainSpec shear_ball_domain(std::int64_t k) {
    return DomainSpec::pushforward(DomainSpec::ball(2), shear_map(k));
}

/// Random weight matrix with entries in [-lim, lim], no all-zero rows.
inline WeightMatrix random_weight_matrix(std::mt19937_64& rng, std::size_t n, std::size_t r,
                                         std::int64_t lim = 3) {
    std::uniform_int_distribution<std::int64_t> d(-lim, lim);
    for (;;) {
        std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(r));
        bool ok = true;
        for (auto& row : rows) {
            bool nonzero = false;
            for (auto& e : row) nonzero = nonzero || (e = d(rng)) != 0;
            ok = ok && nonzero;
        }
        if (ok) return WeightMatrix(n, r, std::move(rows));
    }
}

/// Random validated matrix; resamples until validate_action accepts (and the
/// resonance order fits under mu_cap when given).
inline std::pair<WeightMatrix, ResonanceProfile> random_valid_profile(
    std::mt19937_64& rng, std::size_t max_n, std::size_t max_r,
    std::optional<std::int64_t> mu_cap = {}, std::int64_t lim = 3) {
    std::uniform_int_distribution<std::size_t> dn(1, max_n), dr(1, max_r);
    for (;;) {
        auto M = random_weight_matrix(rng, dn(rng), dr(rng), lim);
        if (!is_valid(validate_action(M))) continue;
        auto p = resonance_profile(M);
        if (mu_cap && p.mu > *mu_cap) continue;
        return {M, p};
    }
}

/// Random resonant map over the profile: up to max_terms nonlinear resonant
/// monomials per component with small Gaussian-rational coefficients.
inline ResonantMap<GaussianRational> random_resonant_map(std::mt19937_64& rng,
                                                         const ResonanceProfile& p,
                                                         std::size_t max_terms = 5) {
    const std::size_t n = p.M.n();
    std::uniform_int_distribution<std::int64_t> num(-9, 9), den(1, 4);
    std::vector<ExactPoly> g(n, ExactPoly(n));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<MultiIndex> nonlinear;
        for (const auto& a : p.sets[i].elements)
            if (a.total_degree() >= 2) nonlinear.push_back(a);
        if (nonlinear.empty()) continue;
        std::uniform_int_distribution<std::size_t> pick(0, nonlinear.size() - 1);
        std::uniform_int_distribution<std::size_t> count(0, std::min(max_terms, nonlinear.size()));
        for (std::size_t t = count(rng); t-- > 0;) {
            GaussianRational c{BigRational(num(rng), den(rng)), BigRational(num(rng), den(rng))};
            if (c.is_zero()) continue;
            auto a = nonlinear[pick(rng)];
            g[i] = g[i] + ExactPoly::monomial(n, a, c) - ExactPoly::monomial(n, a, g[i].coefficient(a));
        }
    }
    return ResonantMap<GaussianRational>::from_nonlinear(std::move(g), p);
}

struct FixtureResult {
    std::string name;
    bool pass = false;
    double value = 0.0;  // headline metric (residual, worst deviation, ...)
    std::string detail;
};

struct SuiteReport {
    std::vector<FixtureResult> results;
    bool all_pass() const {
        for (const auto& r : results)
            if (!r.pass) return false;
        return true;
    }
};

/// Built-in verification battery over the fixture list. mc_budget = 0 skips
/// the Monte Carlo fixtures; everything is deterministically seeded.
inline SuiteReport fixture_suite(std::uint64_t seed = 7, std::uint64_t mc_budget = 1u << 20,
                                 std::size_t fuzz_count = 200) {
    SuiteReport rep;
    auto add = [&](std::string name, bool pass, double value, std::string detail = "") {
        rep.results.push_back({std::move(name), pass, value, std::move(detail)});
    };
    auto guarded = [&](std::string name, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            add(std::move(name) + "/exception", false, 0.0, e.what());
        }
    };

    guarded("validate", [&] {
        bool ok = is_valid(validate_action(WeightMatrix({{1}, {2}}))) &&
                  !is_valid(validate_action(WeightMatrix({{1}, {-1}}))) &&
                  is_valid(validate_action(WeightMatrix({{1, 0}, {0, 1}, {1, 1}})));
        add("validate/known-cases", ok, 0.0);
    });

    guarded("resonance", [&] {
        bool ok = true;
        for (std::int64_t k : {2, 3, 5}) {
            auto p = resonance_profile(WeightMatrix({{1}, {k}}));
            ok = ok && p.mu == k && p.sets[1].elements.size() == 2;
        }
        add("resonance/shear-weights", ok, 0.0);
    });

    guarded("antisymmetry", [&] {
        std::mt19937_64 rng(mix_seed(seed, 2));
        bool ok = true;
        for (std::size_t t = 0; t < fuzz_count && ok; ++t) {
            auto [M, p] = random_valid_profile(rng, 5, 2);
            for (auto& [i, j] : p.order_relation)
                ok = ok && !p.related(j, i) &&
                     (M.row(i) == M.row(j) ||
                      M.row_dot(i, p.cert.c) < M.row_dot(j, p.cert.c));
        }
        add("antisymmetry/fuzz", ok, static_cast<double>(fuzz_count));
    });

    guarded("inversion", [&] {
        std::mt19937_64 rng(mix_seed(seed, 3));
        bool ok = true;
        for (std::size_t t = 0; t < fuzz_count && ok; ++t) {
            auto [M, p] = random_valid_profile(rng, 4, 2, 6);
            auto s = random_resonant_map(rng, p);
            auto tau = invert_resonant(s);
            ok = ok && s.map().compose(tau.map()).is_identity() &&
                 tau.map().compose(s.map()).is_identity() && s.degree() <= p.mu &&
                 tau.degree() <= p.mu;
        }
        add("inversion/round-trip-degree", ok, static_cast<double>(fuzz_count));
    });

    guarded("moments", [&] {
        auto o1 = weight_orthogonality_check(DomainSpec::ball(2), 3);
        auto o2 = weight_orthogonality_check(
            shear_ball_domain(2).with_weights(WeightMatrix({{1}, {2}})), 4);
        add("moments/orthogonality-exact", o1.pass && o2.pass, std::max(o1.worst, o2.worst));
        if (mc_budget > 0) {
            auto egg = DomainSpec::egg({1, 3});
            auto idx = multi_indices_up_to(2, 2);
            std::vector<std::pair<MultiIndex, MultiIndex>> probes;
            for (const auto& a : idx) probes.emplace_back(a, a);
            auto mc = monte_carlo_moments(egg, probes, mc_budget, mix_seed(seed, 4));
            std::size_t agree = 0;
            for (std::size_t k = 0; k < probes.size(); ++k) {
                double ref = monomial_moment(egg, probes[k].first, probes[k].second).value.real();
                if (std::abs(mc[k].value.real() - ref) <= 4.0 * mc[k].stderr_est) ++agree;
            }
            add("moments/mc-agreement", agree * 100 >= probes.size() * 95,
                static_cast<double>(agree) / static_cast<double>(probes.size()));
        }
    });

    guarded("kernel", [&] {
        auto Kb = build_kernel(DomainSpec::ball(2));
        auto mdb = metric_data(Kb);
        double t00_dev = (mdb.T00 - 3.0 * Eigen::MatrixXcd::Identity(2, 2)).norm();
        add("kernel/ball-T00", mdb.shape_ok && t00_dev <= 1e-9, t00_dev);
        auto rcb = rep_coords(Kb, mdb);
        double id_dev = 0;
        auto idmap = FloatMap::identity(2);
        for (std::size_t i = 0; i < 2; ++i) {
            auto diff = rcb.sigma0.component(i) - idmap.component(i);
            for (const auto& [a, c] : diff.terms()) id_dev = std::max(id_dev, std::abs(c));
        }
        add("kernel/ball-sigma-identity", id_dev <= 1e-9, id_dev);

        for (std::int64_t k : {2, 3}) {
            auto D = shear_ball_domain(k);
            auto K = build_kernel(D);
            auto md = metric_data(K);
            auto rc = rep_coords(K, md);
            auto expected = invert_resonant(shear_map(k)).map().to_floating();
            double dev = 0;
            for (std::size_t i = 0; i < 2; ++i) {
                auto diff = rc.sigma0.component(i) - expected.component(i);
                for (const auto& [a, c] : diff.terms()) dev = std::max(dev, std::abs(c));
            }
            auto cc = dense_cross_check(D, k + 2);
            add("kernel/shear-" + std::to_string(k) + "-sigma",
                dev <= 1e-8 && md.shape_ok && cc.sigma_discrepancy <= 1e-8 &&
                    cc.nonresonant_mass <= 1e-8,
                std::max({dev, cc.sigma_discrepancy, cc.nonresonant_mass}));
        }

        auto Ke = build_kernel(DomainSpec::egg({1, 2}).with_weights(WeightMatrix({{1}, {2}})));
        auto mde = metric_data(Ke);
        auto rce = rep_coords(Ke, mde);
        double egg_dev = 0;
        for (std::size_t i = 0; i < 2; ++i) {
            auto diff = rce.sigma0.component(i) - idmap.component(i);
            for (const auto& [a, c] : diff.terms()) egg_dev = std::max(egg_dev, std::abs(c));
        }
        add("kernel/egg-sigma-identity", mde.shape_ok && egg_dev <= 1e-9, egg_dev);
    });

    guarded("theorem", [&] {
        auto B = DomainSpec::ball(2);
        std::complex<double> I{0.0, 1.0};
        auto U = FloatMap::diagonal({I, -1.0});
        auto r1 = verify_theorem(B, B, U, 200, 1e-9, mix_seed(seed, 5));
        add("theorem/cartan-linear", r1.pass && r1.deg_sigma1 == 1, r1.residual);

        auto D = shear_ball_domain(2);
        auto phi = shear_map(2).map().to_floating();
        auto phi_inv = invert_resonant(shear_map(2)).map().to_floating();
        auto f = phi.compose(U.compose(phi_inv));
        auto r2 = verify_theorem(D, D, f, 500, 1e-7, mix_seed(seed, 6));
        add("theorem/shear-conjugate", r2.pass, r2.residual);

        auto r3 = verify_theorem(B.with_weights(WeightMatrix({{1}, {2}})), D, phi, 500, 1e-7,
                                 mix_seed(seed, 7));
        add("theorem/ball-to-shear", r3.pass, r3.residual);

        double bad = perturbed_residual(D, D, f, 0.1, 200, mix_seed(seed, 8));
        add("theorem/negative-control", bad > 1e-3, bad);
    });

    guarded("negative", [&] {
        // designed negative control: phi_2 is not resonant for weights (1,3)
        auto p = resonance_profile(WeightMatrix({{1}, {3}}));
        auto bad = resonance_violations(shear_map(2).map(), p);
        add("negative/phi2-vs-weights13", bad.size() == 1 && bad[0].component == 1, 0.0);
    });

    return rep;
}

}  // namespace qrd
