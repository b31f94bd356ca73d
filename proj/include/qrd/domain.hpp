#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qrd/poly_map.hpp"
#include "qrd/resonance.hpp"
#include "qrd/rng.hpp"

namespace qrd {

/// Bounded quasi-Reinhardt domain with membership oracle, bounding polyradius
/// and the weight matrix of its torus invariance.
class DomainSpec {
public:
    enum class Kind { Ball, Egg, Pushforward };

    /// Unit ball {||z|| < 1}; default weights are the full n-torus.
    static DomainSpec ball(std::size_t n, std::optional<WeightMatrix> weights = {}) {
        DomainSpec d;
        d.kind_ = Kind::Ball;
        d.n_ = n;
        d.weights_ = weights ? *weights : full_torus(n);
        d.radius_.assign(n, 1.0);
        return d;
    }

    /// Egg {sum |z_i|^{2/p_i} < 1} with positive integer p_i.
    static DomainSpec egg(std::vector<std::int64_t> p, std::optional<WeightMatrix> weights = {}) {
        DomainSpec d;
        d.kind_ = Kind::Egg;
        d.n_ = p.size();
        for (auto pi : p)
            if (pi < 1) throw std::invalid_argument("egg: exponents p_i must be >= 1");
        d.p_ = std::move(p);
        d.weights_ = weights ? *weights : full_torus(d.n_);
        d.radius_.assign(d.n_, 1.0);
        return d;
    }

    /// Image of a base domain under a resonant polynomial map (unipotent
    /// Jacobian, exact polynomial inverse).
    static DomainSpec pushforward(DomainSpec base, ResonantMap<GaussianRational> map,
                                  std::optional<WeightMatrix> weights = {}) {
        if (map.map().dim() != base.dim())
            throw std::invalid_argument("pushforward: map dimension mismatch");
        DomainSpec d;
        d.kind_ = Kind::Pushforward;
        d.n_ = base.dim();
        d.weights_ = weights ? *weights : map.profile().M;
        d.map_ = std::make_shared<ResonantMap<GaussianRational>>(map);
        d.inverse_ = std::make_shared<ResonantMap<GaussianRational>>(invert_resonant(map));
        // |phi_i(zeta)| over the base polydisc is bounded by the coefficient
        // absolute sum at the base radii.
        d.radius_.resize(d.n_);
        for (std::size_t i = 0; i < d.n_; ++i) {
            double bound = 0;
            for (const auto& [a, c] : map.map().component(i).terms()) {
                double t = std::abs(c.to_complex());
                for (std::size_t k = 0; k < d.n_; ++k)
                    t *= std::pow(base.radius_[k], static_cast<double>(a[k]));
                bound += t;
            }
            d.radius_[i] = bound;
        }
        d.base_ = std::make_shared<DomainSpec>(std::move(base));
        return d;
    }

    Kind kind() const { return kind_; }
    std::size_t dim() const { return n_; }
    const WeightMatrix& weights() const { return weights_; }
    const std::vector<double>& bounding_radius() const { return radius_; }
    const std::vector<std::int64_t>& egg_exponents() const { return p_; }
    const DomainSpec& base() const { return *base_; }
    const ResonantMap<GaussianRational>& forward_map() const { return *map_; }
    const ResonantMap<GaussianRational>& inverse_map() const { return *inverse_; }

    DomainSpec with_weights(WeightMatrix M) const {
        DomainSpec d(*this);
        d.weights_ = std::move(M);
        return d;
    }

    bool contains(const std::vector<std::complex<double>>& z) const {
        if (z.size() != n_) throw std::invalid_argument("contains: dimension mismatch");
        switch (kind_) {
            case Kind::Ball: {
                double s = 0;
                for (const auto& zi : z) s += std::norm(zi);
                return s < 1.0;
            }
            case Kind::Egg: {
                double s = 0;
                for (std::size_t i = 0; i < n_; ++i) {
                    double q = std::norm(z[i]);  // |z_i|^{2/p} = (|z_i|^2)^{1/p}
                    switch (p_[i]) {
                        case 1: s += q; break;
                        case 2: s += std::sqrt(q); break;
                        case 3: s += std::cbrt(q); break;
                        default: s += std::pow(q, 1.0 / static_cast<double>(p_[i]));
                    }
                }
                return s < 1.0;
            }
            case Kind::Pushforward:
                return base_->contains(inverse_->map().to_floating().evaluate(z));
        }
        throw std::logic_error("contains: unreachable");
    }

    /// Spot-check of rho-invariance of membership on random-looking inputs;
    /// torus orbits of interior points must stay interior.
    bool invariance_spot_check(std::uint64_t seed, std::size_t trials = 64) const;

private:
    static WeightMatrix full_torus(std::size_t n) {
        std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n, 0));
        for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1;
        return WeightMatrix(n, n, std::move(rows));
    }

    Kind kind_ = Kind::Ball;
    std::size_t n_ = 0;
    WeightMatrix weights_{1, 1, {{1}}};
    std::vector<double> radius_;
    std::vector<std::int64_t> p_;
    std::shared_ptr<DomainSpec> base_;
    std::shared_ptr<ResonantMap<GaussianRational>> map_, inverse_;
};

inline bool DomainSpec::invariance_spot_check(std::uint64_t seed, std::size_t trials) const {
    std::mt19937_64 rng(mix_seed(seed, 0));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t t = 0; t < trials; ++t) {
        auto z = uniform_polydisc(rng, radius_);
        std::vector<std::complex<double>> lambda(weights_.r());
        for (auto& l : lambda) {
            double a = 2.0 * M_PI * u(rng);
            l = {std::cos(a), std::sin(a)};
        }
        if (contains(z) != contains(apply_action(weights_, lambda, z))) return false;
    }
    return true;
}

}  // namespace qrd
