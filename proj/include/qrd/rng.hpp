#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace qrd {

/// splitmix64; used to derive independent per-chunk seeds from (master, index).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Uniform point in the closed disc of radius R.
inline std::complex<double> uniform_disc(std::mt19937_64& rng, double R) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double r = R * std::sqrt(u(rng));
    double t = 2.0 * M_PI * u(rng);
    return {r * std::cos(t), r * std::sin(t)};
}

inline std::vector<std::complex<double>> uniform_polydisc(std::mt19937_64& rng,
                                                          const std::vector<double>& R) {
    std::vector<std::complex<double>> z(R.size());
    for (std::size_t i = 0; i < R.size(); ++i) z[i] = uniform_disc(rng, R[i]);
    return z;
}

}  // namespace qrd
