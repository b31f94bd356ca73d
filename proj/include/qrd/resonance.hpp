#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qrd/multi_index.hpp"
#include "qrd/weights.hpp"

namespace qrd {

/// All alpha in N^n with alpha . m^j = w_j for every j. The certificate bounds
/// the search: each unit of alpha_i adds m_i . c >= 1 to alpha . (Mc) = w . c.
inline std::vector<MultiIndex> enumerate_weight_class(const WeightMatrix& M,
                                                      const ValidityCertificate& cert,
                                                      const std::vector<std::int64_t>& w) {
    if (!cert.verify(M))
        throw std::invalid_argument("enumerate_weight_class: certificate does not verify");
    if (w.size() != M.r())
        throw std::invalid_argument("enumerate_weight_class: target weight length mismatch");

    const std::size_t n = M.n(), r = M.r();
    std::int64_t budget = 0;
    for (std::size_t j = 0; j < r; ++j) budget += w[j] * cert.c[j];
    if (budget < 0) return {};

    std::vector<std::int64_t> step(n);
    for (std::size_t i = 0; i < n; ++i) step[i] = M.row_dot(i, cert.c);

    std::vector<MultiIndex> out;
    MultiIndex alpha(n);
    std::vector<std::int64_t> rem(w);
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t bud) {
        if (i == n) {
            if (std::all_of(rem.begin(), rem.end(), [](std::int64_t x) { return x == 0; }))
                out.push_back(alpha);
            return;
        }
        std::int64_t max_e = bud / step[i];
        for (std::int64_t e = 0; e <= max_e; ++e) {
            alpha[i] = e;
            rec(i + 1, bud - e * step[i]);
            for (std::size_t j = 0; j < r; ++j) rem[j] -= M(i, j);
        }
        for (std::size_t j = 0; j < r; ++j) rem[j] += (max_e + 1) * M(i, j);
        alpha[i] = 0;
    };
    rec(0, budget);
    std::sort(out.begin(), out.end(),
              [](const MultiIndex& a, const MultiIndex& b) { return GradedLexLess{}(a, b); });
    return out;
}

/// E_i with its resonance order mu_i = max |alpha|.
struct ResonanceSet {
    std::size_t index = 0;  // 0-based coordinate index
    std::vector<MultiIndex> elements;
    std::int64_t mu_i = 0;
};

struct ResonanceProfile {
    WeightMatrix M;
    ValidityCertificate cert;
    std::vector<ResonanceSet> sets;
    std::int64_t mu = 0;
    /// (i, j) meaning m_i < m_j: some alpha in E_j uses z_i, i != j. 0-based.
    std::vector<std::pair<std::size_t, std::size_t>> order_relation;
    /// Permutation of 0..n-1: proper_ordering[pos] = coordinate at that position.
    std::vector<std::size_t> proper_ordering;

    bool related(std::size_t i, std::size_t j) const {
        return std::find(order_relation.begin(), order_relation.end(), std::make_pair(i, j)) !=
               order_relation.end();
    }
    std::size_t position_of(std::size_t i) const {
        for (std::size_t p = 0; p < proper_ordering.size(); ++p)
            if (proper_ordering[p] == i) return p;
        throw std::logic_error("position_of: index missing from ordering");
    }
};

struct InvalidActionError : std::runtime_error {
    InvalidityCertificate certificate;
    explicit InvalidActionError(InvalidityCertificate g)
        : std::runtime_error("action is invalid: z^" + g.gamma.str() + " is invariant"),
          certificate(std::move(g)) {}
};

inline ResonanceProfile resonance_profile(const WeightMatrix& M) {
    auto v = validate_action(M);
    if (!is_valid(v)) throw InvalidActionError(std::get<InvalidityCertificate>(v));
    auto cert = std::get<ValidityCertificate>(v);

    const std::size_t n = M.n();
    ResonanceProfile p{M, cert, {}, 0, {}, {}};
    p.sets.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.sets[i].index = i;
        p.sets[i].elements = enumerate_weight_class(M, cert, M.row(i));
        for (const auto& a : p.sets[i].elements)
            p.sets[i].mu_i = std::max(p.sets[i].mu_i, a.total_degree());
        p.mu = std::max(p.mu, p.sets[i].mu_i);
    }

    // Equal rows carry identical sets and only reach each other through e_i,
    // which for a valid action is their sole shared support; no relation there.
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j || M.row(i) == M.row(j)) continue;
            for (const auto& a : p.sets[j].elements)
                if (a[i] != 0) {
                    p.order_relation.emplace_back(i, j);
                    break;
                }
        }

    // Proper ordering: primary key m_i . c ascending; ties put indices that
    // appear as the target of a relation first, then original index.
    std::vector<bool> has_incoming(n, false);
    for (auto& [i, j] : p.order_relation) has_incoming[j] = true;
    p.proper_ordering.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.proper_ordering[i] = i;
    std::sort(p.proper_ordering.begin(), p.proper_ordering.end(),
              [&](std::size_t a, std::size_t b) {
                  auto sa = M.row_dot(a, cert.c), sb = M.row_dot(b, cert.c);
                  if (sa != sb) return sa < sb;
                  if (has_incoming[a] != has_incoming[b]) return static_cast<bool>(has_incoming[a]);
                  return a < b;
              });

    for (auto& [i, j] : p.order_relation)
        if (p.position_of(i) >= p.position_of(j))
            throw std::logic_error("resonance_profile: ordering incompatible with relation");
    return p;
}

/// gamma from the antisymmetry proof: the exponent of (z^alpha)^{beta_j} z^beta
/// / (z_i z_j^{beta_j}), i.e. gamma_i = beta_j alpha_i - 1, gamma_j = 0 and
/// gamma_l = beta_j alpha_l + beta_l otherwise. When alpha has the weight of
/// row j and beta that of row i, every weight of gamma telescopes to zero.
inline MultiIndex build_gamma(const MultiIndex& alpha, const MultiIndex& beta, std::size_t i,
                              std::size_t j) {
    const std::size_t n = alpha.size();
    if (beta.size() != n || i == j || i >= n || j >= n)
        throw std::invalid_argument("build_gamma: bad indices");
    if (alpha[i] < 1 || alpha[j] != 0 || beta[j] < 1 || beta[i] != 0)
        throw std::invalid_argument("build_gamma: inputs violate the cross-resonance pattern");
    MultiIndex g(n);
    for (std::size_t l = 0; l < n; ++l) {
        if (l == i)
            g[l] = beta[j] * alpha[i] - 1;
        else if (l == j)
            g[l] = 0;
        else
            g[l] = beta[j] * alpha[l] + beta[l];
    }
    if (g.is_zero())
        throw std::invalid_argument("build_gamma: degenerate input (equal weights), gamma = 0");
    return g;
}

struct AntisymmetryVerdict {
    bool pass = true;
    std::size_t i = 0, j = 0;
    MultiIndex gamma;  // invariant certificate when pass is false
};

/// Checks that no pair has both m_i < m_j and m_j < m_i. A violation yields
/// the explicit invariant exponent gamma as a certificate.
inline AntisymmetryVerdict check_antisymmetry(const WeightMatrix& M) {
    for (std::size_t i = 0; i < M.n(); ++i)
        for (std::size_t j = i + 1; j < M.n(); ++j)
            if (M.row(i) == M.row(j))
                throw std::invalid_argument(
                    "check_antisymmetry: duplicate weight rows, relation undefined");

    auto p = resonance_profile(M);
    for (std::size_t i = 0; i < M.n(); ++i)
        for (std::size_t j = 0; j < M.n(); ++j) {
            if (i == j || !p.related(i, j) || !p.related(j, i)) continue;
            const MultiIndex* alpha = nullptr;
            const MultiIndex* beta = nullptr;
            for (const auto& a : p.sets[j].elements)
                if (a[i] >= 1 && a[j] == 0) alpha = &a;
            for (const auto& b : p.sets[i].elements)
                if (b[j] >= 1 && b[i] == 0) beta = &b;
            if (alpha && beta) return {false, i, j, build_gamma(*alpha, *beta, i, j)};
        }
    return {};
}

}  // namespace qrd
