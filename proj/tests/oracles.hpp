// Test-only oracles, independent of the library's computation paths.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "qrd/moments.hpp"
#include "qrd/resonance.hpp"

namespace oracle {

/// Brute-force scan for {alpha : alpha . m^j = w_j} over all |alpha| <= cap.
/// No certificate, no pruning.
inline std::vector<qrd::MultiIndex> brute_force_weight_class(const qrd::WeightMatrix& M,
                                                             const std::vector<std::int64_t>& w,
                                                             std::int64_t cap) {
    std::vector<qrd::MultiIndex> out;
    for (auto& a : qrd::multi_indices_up_to(M.n(), cap))
        if (M.weight_of_monomial(a) == w) out.push_back(a);
    return out;
}

/// Composite Simpson on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      std::size_t intervals = 2000) {
    if (intervals % 2) ++intervals;
    double h = (b - a) / static_cast<double>(intervals);
    double s = f(a) + f(b);
    for (std::size_t k = 1; k < intervals; ++k) s += f(a + h * k) * (k % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

/// Quadrature oracle for the diagonal egg moment
///   int_{sum |z_i|^{2/p_i} < 1} prod |z_i|^{2 a_i} dV,  n <= 2.
/// Polar coordinates per variable reduce it to an integral over
/// {u_1^{1/p_1} + u_2^{1/p_2} < 1}; the inner u_2 integral is elementary and
/// the outer one is done by Simpson. Independent of the factorial closed form.
inline double egg_moment_quadrature(const std::vector<std::int64_t>& p,
                                    const std::vector<std::int64_t>& a) {
    if (p.size() == 1)  // any p: u^{1/p} < 1 is just u < 1
        return M_PI * simpson([&](double u) { return std::pow(u, static_cast<double>(a[0])); },
                              0.0, 1.0, 4000);
    double inner_pow = static_cast<double>(p[1] * (a[1] + 1));
    auto f = [&](double u1) {
        double edge = 1.0 - std::pow(u1, 1.0 / static_cast<double>(p[0]));
        if (edge <= 0) return 0.0;
        return std::pow(u1, static_cast<double>(a[0])) * std::pow(edge, inner_pow) /
               (static_cast<double>(a[1]) + 1.0);
    };
    // the integrand has a fractional-power endpoint, so Simpson converges
    // slowly; compensate with a fine grid
    return M_PI * M_PI * simpson(f, 0.0, 1.0, 200000);
}

/// Genuinely brute-force 4-d midpoint-grid volume of the unit ball in C^2,
/// crude but free of any change of variables.
inline double ball2_volume_grid(std::size_t cells_per_axis = 40) {
    double h = 2.0 / static_cast<double>(cells_per_axis);
    double cell = h * h * h * h;
    double vol = 0.0;
    for (std::size_t i0 = 0; i0 < cells_per_axis; ++i0)
        for (std::size_t i1 = 0; i1 < cells_per_axis; ++i1)
            for (std::size_t i2 = 0; i2 < cells_per_axis; ++i2)
                for (std::size_t i3 = 0; i3 < cells_per_axis; ++i3) {
                    double x0 = -1.0 + h * (i0 + 0.5), x1 = -1.0 + h * (i1 + 0.5);
                    double x2 = -1.0 + h * (i2 + 0.5), x3 = -1.0 + h * (i3 + 0.5);
                    if (x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3 < 1.0) vol += cell;
                }
    return vol;
}

}  // namespace oracle
