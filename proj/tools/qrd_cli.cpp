// Command-line surface over the library: JSON in, JSON out.
// Exit codes: 0 all verdicts pass, 1 verdict failure, 2 input error.

#include <CLI11.hpp>

#include <fstream>
#include <numeric>
#include <iostream>
#include <optional>
#include <string>

#include "qrd/json_io.hpp"

namespace {

constexpr const char* kVersion = "qrd 0.1.0";

qrd::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    qrd::json j;
    in >> j;
    return j;
}

void emit(const qrd::json& j, const std::string& out_path) {
    qrd::json wrapped = j;
    wrapped["tool"] = kVersion;
    if (out_path.empty()) {
        std::cout << wrapped.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        out << wrapped.dump(2) << "\n";
    }
}

std::optional<qrd::MomentMethod> parse_method(const std::string& m) {
    if (m.empty() || m == "auto") return std::nullopt;
    if (m == "closed_form") return qrd::MomentMethod::ClosedForm;
    if (m == "pushforward") return qrd::MomentMethod::Pushforward;
    if (m == "monte_carlo") return qrd::MomentMethod::MonteCarlo;
    throw std::invalid_argument("unknown method '" + m + "'");
}

qrd::MultiIndex parse_index(const std::vector<std::int64_t>& v) {
    return qrd::MultiIndex(v);
}

}  // namespace

int main(int argc, char** argv) {
    using namespace qrd;
    CLI::App app{"resonance combinatorics and Bergman representative coordinates "
                 "of quasi-Reinhardt domains"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "write the JSON report here instead of stdout");

    std::string weights_path, domain_path, d2_path, map_path, map2_path;
    std::string method_str = "auto", mode;
    std::vector<std::int64_t> alpha_v, beta_v;
    std::uint64_t samples = 1u << 20, seed = 7, budget = 1u << 20;
    std::int64_t dense_cap = -1;
    double tol = 1e-7;
    std::size_t nsamples = 1000;

    auto* validate = app.add_subcommand("validate", "decide validity of a weight action");
    validate->add_option("weights", weights_path)->required();

    auto* resonance = app.add_subcommand("resonance", "resonance sets, orders and proper ordering");
    resonance->add_option("weights", weights_path)->required();

    auto* mapcmd = app.add_subcommand("map", "invert, compose or check polynomial maps");
    mapcmd->add_option("mode", mode, "invert|compose|check")->required();
    mapcmd->add_option("map", map_path)->required();
    mapcmd->add_option("map2", map2_path, "second map (compose)");
    mapcmd->add_option("--weights", weights_path, "weight matrix (invert/check)");

    auto* moments = app.add_subcommand("moments", "monomial moment over a domain");
    moments->add_option("domain", domain_path)->required();
    moments->add_option("--alpha", alpha_v)->required();
    moments->add_option("--beta", beta_v)->required();
    moments->add_option("--method", method_str, "auto|closed_form|pushforward|monte_carlo");
    moments->add_option("--samples", samples);
    moments->add_option("--seed", seed);

    auto* repcoords = app.add_subcommand("repcoords", "Bergman representative coordinates at 0");
    repcoords->add_option("domain", domain_path)->required();
    repcoords->add_option("--dense-cap", dense_cap, "also run the dense cross-check at this cap");
    repcoords->add_option("--method", method_str);
    repcoords->add_option("--samples", samples);
    repcoords->add_option("--seed", seed);

    auto* verify = app.add_subcommand("verify", "theorem check for a candidate biholomorphism");
    verify->add_option("d1", domain_path)->required();
    verify->add_option("d2", d2_path)->required();
    verify->add_option("f", map_path)->required();
    verify->add_option("--tol", tol);
    verify->add_option("--points", nsamples);
    verify->add_option("--seed", seed);

    auto* suite = app.add_subcommand("suite", "built-in fixture battery");
    suite->add_option("--seed", seed);
    suite->add_option("--budget", budget, "Monte Carlo sample budget (0 = exact-path subset)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) {
            auto M = weight_matrix_from_json(load_json(weights_path));
            auto v = validate_action(M);
            auto j = to_json(v);
            if (M.r() == 1) {
                // report (not enforce) whether a rank-1 weight vector is in
                // lowest terms; scaling does not change the resonance sets
                std::int64_t g = 0;
                for (std::size_t i = 0; i < M.n(); ++i) g = std::gcd(g, M(i, 0));
                j["gcd"] = g;
                j["gcd_normalized"] = (g == 1);
            }
            emit(j, out_path);
            return is_valid(v) ? 0 : 2;
        }
        if (*resonance) {
            auto M = weight_matrix_from_json(load_json(weights_path));
            emit(to_json(resonance_profile(M)), out_path);
            return 0;
        }
        if (*mapcmd) {
            auto f = exact_map_from_json(load_json(map_path));
            if (mode == "compose") {
                if (map2_path.empty()) throw std::invalid_argument("compose needs two maps");
                auto g = exact_map_from_json(load_json(map2_path));
                emit(to_json(f.compose(g)), out_path);
                return 0;
            }
            if (weights_path.empty())
                throw std::invalid_argument("map " + mode + " needs --weights");
            auto profile = resonance_profile(weight_matrix_from_json(load_json(weights_path)));
            if (mode == "check") {
                auto bad = resonance_violations(f, profile);
                json viols = json::array();
                for (const auto& v : bad)
                    viols.push_back({{"component", v.component + 1}, {"exp", v.exponent.exponents()}});
                emit({{"resonant", bad.empty()}, {"violations", viols}}, out_path);
                return bad.empty() ? 0 : 1;
            }
            if (mode == "invert") {
                auto tau = invert_resonant(ResonantMap<GaussianRational>(f, profile));
                emit(to_json(tau.map()), out_path);
                return 0;
            }
            throw std::invalid_argument("unknown map mode '" + mode + "'");
        }
        if (*moments) {
            auto D = domain_from_json(load_json(domain_path));
            auto v = monomial_moment(D, parse_index(alpha_v), parse_index(beta_v),
                                     parse_method(method_str), samples, seed);
            emit(to_json(v), out_path);
            return 0;
        }
        if (*repcoords) {
            auto D = domain_from_json(load_json(domain_path));
            auto method = parse_method(method_str);
            auto K = build_kernel(D, method, samples, seed);
            double tol_rc = K.classes.front().max_stderr > 0 ? 1e-4 : 1e-9;
            auto md = metric_data(K, tol_rc);
            auto rc = rep_coords(K, md, tol_rc);
            json j = {{"seed", seed},
                      {"K00", K.K00},
                      {"vol", K.vol},
                      {"mu", K.profile.mu},
                      {"shape_ok", md.shape_ok},
                      {"shape_message", md.shape_message},
                      {"sigma0", to_json(rc.sigma0)},
                      {"coeff_error_bar", rc.coeff_error_bar},
                      {"nonresonant_mass", rc.nonresonant_mass},
                      {"jac_identity_error", rc.jac_identity_error}};
            json T00 = json::array();
            for (Eigen::Index i = 0; i < md.T00.rows(); ++i) {
                json row = json::array();
                for (Eigen::Index k = 0; k < md.T00.cols(); ++k)
                    row.push_back({md.T00(i, k).real(), md.T00(i, k).imag()});
                T00.push_back(row);
            }
            j["T00"] = T00;
            bool pass = md.shape_ok && rc.nonresonant_mass <= std::max(tol_rc, 1e-8);
            if (dense_cap >= 0) {
                auto cc = dense_cross_check(D, dense_cap, method, samples, seed);
                j["dense"] = {{"sigma_discrepancy", cc.sigma_discrepancy},
                              {"nonresonant_mass", cc.nonresonant_mass},
                              {"flatness", cc.flatness},
                              {"stderr", cc.stderr_scale}};
                double dtol = cc.stderr_scale > 0 ? 3.0 * cc.stderr_scale * 100 : 1e-8;
                pass = pass && cc.nonresonant_mass <= dtol;
            }
            j["pass"] = pass;
            emit(j, out_path);
            return pass ? 0 : 1;
        }
        if (*verify) {
            auto D1 = domain_from_json(load_json(domain_path));
            auto D2 = domain_from_json(load_json(d2_path));
            auto f = exact_map_from_json(load_json(map_path)).to_floating();
            auto rep = verify_theorem(D1, D2, f, nsamples, tol, seed);
            json j = {{"seed", seed},
                      {"residual", rep.residual},
                      {"tolerance", tol},
                      {"degrees",
                       {{"sigma1", rep.deg_sigma1},
                        {"sigma2", rep.deg_sigma2},
                        {"inv_sigma1", rep.deg_inv_sigma1},
                        {"inv_sigma2", rep.deg_inv_sigma2},
                        {"mu1", rep.mu1},
                        {"mu2", rep.mu2}}},
                      {"lf_regression_error", rep.lf_regression_error},
                      {"degrees_ok", rep.degrees_ok},
                      {"pass", rep.pass}};
            emit(j, out_path);
            return rep.pass ? 0 : 1;
        }
        if (*suite) {
            auto rep = fixture_suite(seed, budget);
            json j = to_json(rep);
            j["seed"] = seed;
            j["budget"] = budget;
            emit(j, out_path);
            return rep.all_pass() ? 0 : 1;
        }
    } catch (const InvalidActionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        emit({{"valid", false}, {"gamma", e.certificate.gamma.exponents()}}, out_path);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
