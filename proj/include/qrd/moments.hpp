#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrd/domain.hpp"
#include "qrd/polynomial.hpp"
#include "qrd/rng.hpp"

namespace qrd {

enum class MomentMethod { ClosedForm, Pushforward, MonteCarlo };

inline const char* method_name(MomentMethod m) {
    switch (m) {
        case MomentMethod::ClosedForm: return "closed_form";
        case MomentMethod::Pushforward: return "pushforward";
        case MomentMethod::MonteCarlo: return "monte_carlo";
    }
    return "?";
}

/// Value of a monomial inner product; exact paths carry the exact rational
/// multiple of pi^n and stderr 0.
struct MomentValue {
    std::complex<double> value{0.0};
    MomentMethod method = MomentMethod::ClosedForm;
    double stderr_est = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::optional<GaussianRational> exact_over_pi_n;  // value / pi^n when exact
};

namespace detail {

inline BigInt factorial(std::int64_t k) {
    BigInt f = 1;
    for (std::int64_t i = 2; i <= k; ++i) f *= i;
    return f;
}

// int_{Egg(p)} prod |z_i|^{2 a_i} dV / pi^n, by the Dirichlet integral after
// u_i = v_i^{p_i}:  prod p_i * prod (p_i(a_i+1)-1)! / (sum p_i(a_i+1))!.
// The ball is the egg with all p_i = 1.
inline BigRational radial_moment_over_pi_n(const std::vector<std::int64_t>& p,
                                           const MultiIndex& a) {
    BigInt num = 1;
    std::int64_t s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::int64_t q = p[i] * (a[i] + 1);
        num *= p[i];
        num *= factorial(q - 1);
        s += q;
    }
    return BigRational(num, factorial(s));
}

}  // namespace detail

/// Exact moment <z^alpha, z^beta> / pi^n for ball, egg and resonant
/// pushforwards of them. Nullopt when no exact path exists.
inline std::optional<GaussianRational> exact_moment_over_pi_n(const DomainSpec& D,
                                                              const MultiIndex& alpha,
                                                              const MultiIndex& beta) {
    const std::size_t n = D.dim();
    switch (D.kind()) {
        case DomainSpec::Kind::Ball:
        case DomainSpec::Kind::Egg: {
            // full-torus orthogonality: nonzero only on the diagonal
            if (alpha != beta) return GaussianRational(0);
            std::vector<std::int64_t> p =
                D.kind() == DomainSpec::Kind::Ball ? std::vector<std::int64_t>(n, 1)
                                                   : D.egg_exponents();
            return GaussianRational(detail::radial_moment_over_pi_n(p, alpha));
        }
        case DomainSpec::Kind::Pushforward: {
            // det Jac == 1 for resonant maps, so the moment is a finite
            // bilinear combination of base moments.
            const auto& phi = D.forward_map().map();
            ExactPoly pa = ExactPoly::constant(n, GaussianRational(1));
            ExactPoly pb = ExactPoly::constant(n, GaussianRational(1));
            for (std::size_t i = 0; i < n; ++i) {
                pa = pa * phi.component(i).pow(alpha[i]);
                pb = pb * phi.component(i).pow(beta[i]);
            }
            GaussianRational acc;
            for (const auto& [a, ca] : pa.terms()) {
                for (const auto& [b, cb] : pb.terms()) {
                    auto base = exact_moment_over_pi_n(D.base(), a, b);
                    if (!base) return std::nullopt;
                    if (!base->is_zero()) acc += ca * cb.conj() * *base;
                }
            }
            return acc;
        }
    }
    return std::nullopt;
}

inline double pi_pow(std::size_t n) { return std::pow(M_PI, static_cast<double>(n)); }

/// Monte Carlo estimates for a batch of (alpha, beta) probes over shared
/// samples: uniform proposal in the bounding polydisc, rejection by
/// membership. Chunked with per-chunk seeds; chunk partials are combined in
/// fixed index order, so results are reproducible for a given seed.
inline std::vector<MomentValue> monte_carlo_moments(
    const DomainSpec& D, const std::vector<std::pair<MultiIndex, MultiIndex>>& probes,
    std::uint64_t samples, std::uint64_t seed, std::uint64_t chunk_size = 1u << 15) {
    const std::size_t n = D.dim(), P = probes.size();
    double box_volume = 1.0;
    for (double R : D.bounding_radius()) box_volume *= M_PI * R * R;

    std::vector<std::complex<double>> sum(P, 0.0);
    std::vector<double> sumsq(P, 0.0);
    std::uint64_t accepted = 0, done = 0;

    // shared power tables keep the per-sample cost at one product per probe
    std::int64_t max_exp = 1;
    for (const auto& [a, b] : probes)
        for (std::size_t i = 0; i < n; ++i) max_exp = std::max({max_exp, a[i], b[i]});
    std::vector<std::vector<std::complex<double>>> pz(n), pc(n);
    for (std::size_t i = 0; i < n; ++i) {
        pz[i].resize(max_exp + 1);
        pc[i].resize(max_exp + 1);
    }

    for (std::uint64_t chunk = 0; done < samples; ++chunk) {
        std::uint64_t m = std::min<std::uint64_t>(chunk_size, samples - done);
        std::mt19937_64 rng(mix_seed(seed, chunk));
        std::vector<std::complex<double>> csum(P, 0.0);
        std::vector<double> csumsq(P, 0.0);
        for (std::uint64_t s = 0; s < m; ++s) {
            auto z = uniform_polydisc(rng, D.bounding_radius());
            if (!D.contains(z)) continue;
            ++accepted;
            for (std::size_t i = 0; i < n; ++i) {
                pz[i][0] = pc[i][0] = 1.0;
                for (std::int64_t e = 1; e <= max_exp; ++e) {
                    pz[i][e] = pz[i][e - 1] * z[i];
                    pc[i][e] = pc[i][e - 1] * std::conj(z[i]);
                }
            }
            for (std::size_t p = 0; p < P; ++p) {
                std::complex<double> g = 1.0;
                for (std::size_t i = 0; i < n; ++i)
                    g *= pz[i][probes[p].first[i]] * pc[i][probes[p].second[i]];
                csum[p] += g;
                csumsq[p] += std::norm(g);
            }
        }
        for (std::size_t p = 0; p < P; ++p) {
            sum[p] += csum[p];
            sumsq[p] += csumsq[p];
        }
        done += m;
    }
    if (accepted == 0) throw std::runtime_error("monte_carlo_moments: zero acceptance");

    std::vector<MomentValue> out(P);
    double N = static_cast<double>(samples);
    for (std::size_t p = 0; p < P; ++p) {
        std::complex<double> mean = sum[p] / N;
        double var = std::max(0.0, sumsq[p] / N - std::norm(mean));
        out[p].value = box_volume * mean;
        out[p].method = MomentMethod::MonteCarlo;
        out[p].stderr_est = box_volume * std::sqrt(var / N);
        out[p].samples = samples;
        out[p].seed = seed;
    }
    return out;
}

/// <z^alpha, z^beta> = int_D z^alpha conj(z)^beta dV.
inline MomentValue monomial_moment(const DomainSpec& D, const MultiIndex& alpha,
                                   const MultiIndex& beta,
                                   std::optional<MomentMethod> method = {},
                                   std::uint64_t samples = 1u << 20, std::uint64_t seed = 1) {
    if (alpha.size() != D.dim() || beta.size() != D.dim())
        throw std::invalid_argument("monomial_moment: index dimension mismatch");
    MomentMethod m = method.value_or(D.kind() == DomainSpec::Kind::Pushforward
                                         ? MomentMethod::Pushforward
                                         : MomentMethod::ClosedForm);
    if (m == MomentMethod::MonteCarlo)
        return monte_carlo_moments(D, {{alpha, beta}}, samples, seed)[0];
    auto exact = exact_moment_over_pi_n(D, alpha, beta);
    if (!exact) throw std::invalid_argument("monomial_moment: no exact path for this domain");
    MomentValue v;
    v.method = m;
    v.exact_over_pi_n = *exact;
    v.value = exact->to_complex() * pi_pow(D.dim());
    return v;
}

inline MomentValue volume(const DomainSpec& D, std::optional<MomentMethod> method = {},
                          std::uint64_t samples = 1u << 20, std::uint64_t seed = 1) {
    MultiIndex zero(D.dim());
    return monomial_moment(D, zero, zero, method, samples, seed);
}

inline std::vector<MultiIndex> multi_indices_up_to(std::size_t n, std::int64_t cap) {
    std::vector<MultiIndex> out;
    MultiIndex a(n);
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t rem) {
        if (i == n) {
            out.push_back(a);
            return;
        }
        for (std::int64_t e = 0; e <= rem; ++e) {
            a[i] = e;
            rec(i + 1, rem - e);
        }
        a[i] = 0;
    };
    rec(0, cap);
    std::sort(out.begin(), out.end(),
              [](const MultiIndex& x, const MultiIndex& y) { return GradedLexLess{}(x, y); });
    return out;
}

struct OrthogonalityReport {
    bool pass = true;
    std::size_t checked = 0;
    double worst = 0.0;
    MultiIndex worst_alpha, worst_beta;
};

/// Cross-weight moments must vanish: exactly on exact paths, within 3*stderr
/// for Monte Carlo.
inline OrthogonalityReport weight_orthogonality_check(const DomainSpec& D, std::int64_t degree_cap,
                                                      std::optional<MomentMethod> method = {},
                                                      std::uint64_t samples = 1u << 20,
                                                      std::uint64_t seed = 1) {
    OrthogonalityReport rep;
    auto idx = multi_indices_up_to(D.dim(), degree_cap);
    const auto& M = D.weights();
    std::vector<std::pair<MultiIndex, MultiIndex>> probes;
    for (const auto& a : idx)
        for (const auto& b : idx)
            if (M.weight_of_monomial(a) != M.weight_of_monomial(b)) probes.emplace_back(a, b);

    bool mc = method && *method == MomentMethod::MonteCarlo;
    std::vector<MomentValue> mc_vals;
    if (mc) mc_vals = monte_carlo_moments(D, probes, samples, seed);

    for (std::size_t k = 0; k < probes.size(); ++k) {
        const auto& [a, b] = probes[k];
        auto mv = mc ? mc_vals[k] : monomial_moment(D, a, b, method, samples, seed);
        ++rep.checked;
        double mag = std::abs(mv.value);
        bool ok = mv.method == MomentMethod::MonteCarlo
                      ? mag <= 3.0 * mv.stderr_est + 1e-12
                      : (mv.exact_over_pi_n && mv.exact_over_pi_n->is_zero());
        if (mag >= rep.worst) {
            rep.worst = mag;
            rep.worst_alpha = a;
            rep.worst_beta = b;
        }
        if (!ok) rep.pass = false;
    }
    return rep;
}

}  // namespace qrd
