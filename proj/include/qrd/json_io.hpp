#pragma once

#include <json.hpp>

#include <complex>
#include <string>

#include "qrd/domain.hpp"
#include "qrd/fixtures.hpp"
#include "qrd/moments.hpp"
#include "qrd/resonance.hpp"

namespace qrd {

using nlohmann::json;

inline json to_json(const WeightMatrix& M) {
    return {{"n", M.n()}, {"r", M.r()}, {"rows", M.rows()}};
}

inline WeightMatrix weight_matrix_from_json(const json& j) {
    auto rows = j.at("rows").get<std::vector<std::vector<std::int64_t>>>();
    return WeightMatrix(j.at("n").get<std::size_t>(), j.at("r").get<std::size_t>(),
                        std::move(rows));
}

inline json to_json(const ValidationResult& v) {
    if (is_valid(v)) return {{"valid", true}, {"c", std::get<ValidityCertificate>(v).c}};
    return {{"valid", false},
            {"gamma", std::get<InvalidityCertificate>(v).gamma.exponents()}};
}

inline json to_json(const ResonanceProfile& p) {
    json sets = json::array();
    for (const auto& s : p.sets) {
        json elems = json::array();
        for (const auto& a : s.elements) elems.push_back(a.exponents());
        sets.push_back({{"i", s.index + 1}, {"E_i", elems}, {"mu_i", s.mu_i}});
    }
    json rel = json::array();
    for (auto& [i, j] : p.order_relation) rel.push_back({i + 1, j + 1});
    json ord = json::array();
    for (auto i : p.proper_ordering) ord.push_back(i + 1);
    json E = json::array();
    for (const auto& s : p.sets) {
        json elems = json::array();
        for (const auto& a : s.elements) elems.push_back(a.exponents());
        E.push_back(elems);
    }
    return {{"mu", p.mu},        {"sets", sets},          {"E", E},
            {"relation", rel},   {"ordering", ord},       {"certificate", p.cert.c}};
}

template <class Coeff>
json to_json(const PolyMap<Coeff>& f) {
    json comps = json::array();
    for (std::size_t i = 0; i < f.dim(); ++i) {
        json terms = json::array();
        for (const auto& [a, c] : f.component(i).terms()) {
            if constexpr (std::is_same_v<Coeff, GaussianRational>) {
                terms.push_back({{"exp", a.exponents()},
                                 {"re", rational_to_string(c.re)},
                                 {"im", rational_to_string(c.im)}});
            } else {
                terms.push_back(
                    {{"exp", a.exponents()}, {"re", c.real()}, {"im", c.imag()}});
            }
        }
        comps.push_back(terms);
    }
    return {{"n", f.dim()}, {"components", comps}};
}

inline ExactMap exact_map_from_json(const json& j) {
    std::size_t n = j.at("n").get<std::size_t>();
    const auto& comps = j.at("components");
    if (comps.size() != n) throw std::invalid_argument("map JSON: component count mismatch");
    ExactMap f(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& t : comps[i]) {
            MultiIndex a(t.at("exp").get<std::vector<std::int64_t>>());
            GaussianRational c{rational_from_string(t.at("re").get<std::string>()),
                               rational_from_string(t.at("im").get<std::string>())};
            f.component(i).add_term(a, c);
        }
    }
    return f;
}

inline DomainSpec domain_from_json(const json& j) {
    std::string type = j.at("type").get<std::string>();
    std::optional<WeightMatrix> weights;
    if (j.contains("weights")) weights = weight_matrix_from_json(j.at("weights"));

    if (type == "ball") return DomainSpec::ball(j.at("n").get<std::size_t>(), weights);
    if (type == "egg")
        return DomainSpec::egg(j.at("p").get<std::vector<std::int64_t>>(), weights);
    if (type == "pushforward") {
        auto base = domain_from_json(j.at("base"));
        auto f = exact_map_from_json(j.at("map"));
        WeightMatrix M = weights ? *weights : base.weights();
        auto smap = ResonantMap<GaussianRational>(f, resonance_profile(M));
        return DomainSpec::pushforward(std::move(base), std::move(smap), weights);
    }
    throw std::invalid_argument("domain JSON: unknown type '" + type + "'");
}

inline json to_json(const MomentValue& v) {
    json j = {{"re", v.value.real()},
              {"im", v.value.imag()},
              {"method", method_name(v.method)},
              {"stderr", v.stderr_est}};
    if (v.method == MomentMethod::MonteCarlo) {
        j["samples"] = v.samples;
        j["seed"] = v.seed;
    }
    if (v.exact_over_pi_n) {
        j["exact_over_pi_n_re"] = rational_to_string(v.exact_over_pi_n->re);
        j["exact_over_pi_n_im"] = rational_to_string(v.exact_over_pi_n->im);
    }
    return j;
}

inline json to_json(const SuiteReport& rep) {
    json results = json::array();
    for (const auto& r : rep.results)
        results.push_back(
            {{"name", r.name}, {"pass", r.pass}, {"value", r.value}, {"detail", r.detail}});
    return {{"all_pass", rep.all_pass()}, {"results", results}};
}

}  // namespace qrd
