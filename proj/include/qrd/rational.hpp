#pragma once

#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qrd/weights.hpp"

namespace qrd {

/// Gaussian rational a + b*i with exact arithmetic.
struct GaussianRational {
    BigRational re{0}, im{0};

    GaussianRational() = default;
    GaussianRational(BigRational r) : re(std::move(r)) {}
    GaussianRational(BigRational r, BigRational i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(std::int64_t r) : re(r) {}
    GaussianRational(std::int64_t r, std::int64_t i) : re(r), im(i) {}

    static GaussianRational i() { return {0, 1}; }

    bool is_zero() const { return re == 0 && im == 0; }
    GaussianRational conj() const { return {re, -im}; }

    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational operator+(const GaussianRational& o) const { return {re + o.re, im + o.im}; }
    GaussianRational operator-(const GaussianRational& o) const { return {re - o.re, im - o.im}; }
    GaussianRational operator*(const GaussianRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussianRational operator/(const GaussianRational& o) const {
        BigRational d = o.re * o.re + o.im * o.im;
        if (d == 0) throw std::domain_error("GaussianRational: division by zero");
        return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
    }
    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

    bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussianRational& o) const { return !(*this == o); }

    std::complex<double> to_complex() const {
        return {re.convert_to<double>(), im.convert_to<double>()};
    }
};

inline std::string rational_to_string(const BigRational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

inline BigRational rational_from_string(const std::string& s) {
    std::istringstream is(s);
    BigRational q;
    if (!(is >> q)) throw std::invalid_argument("bad rational literal: " + s);
    return q;
}

// Coefficient traits shared by the exact and floating polynomial instantiations.

inline bool coeff_is_zero(const GaussianRational& c) { return c.is_zero(); }
inline bool coeff_is_zero(const std::complex<double>& c) { return c == std::complex<double>{0.0}; }

inline GaussianRational coeff_conj(const GaussianRational& c) { return c.conj(); }
inline std::complex<double> coeff_conj(const std::complex<double>& c) { return std::conj(c); }

inline std::complex<double> coeff_to_complex(const GaussianRational& c) { return c.to_complex(); }
inline std::complex<double> coeff_to_complex(const std::complex<double>& c) { return c; }

}  // namespace qrd
