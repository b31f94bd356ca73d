#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrd {

/// Exponent vector alpha in N^n.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t n) : exp_(n, 0) {}
    MultiIndex(std::initializer_list<std::int64_t> e) : exp_(e) { check(); }
    explicit MultiIndex(std::vector<std::int64_t> e) : exp_(std::move(e)) { check(); }

    static MultiIndex unit(std::size_t n, std::size_t k) {
        MultiIndex a(n);
        a.exp_[k] = 1;
        return a;
    }

    std::size_t size() const { return exp_.size(); }
    std::int64_t operator[](std::size_t i) const { return exp_[i]; }
    std::int64_t& operator[](std::size_t i) { return exp_[i]; }
    const std::vector<std::int64_t>& exponents() const { return exp_; }

    std::int64_t total_degree() const {
        return std::accumulate(exp_.begin(), exp_.end(), std::int64_t{0});
    }
    bool is_zero() const {
        for (auto e : exp_)
            if (e != 0) return false;
        return true;
    }

    MultiIndex operator+(const MultiIndex& o) const {
        MultiIndex r(*this);
        for (std::size_t i = 0; i < exp_.size(); ++i) r.exp_[i] += o.exp_[i];
        return r;
    }

    bool operator==(const MultiIndex& o) const { return exp_ == o.exp_; }
    bool operator!=(const MultiIndex& o) const { return exp_ != o.exp_; }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < exp_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(exp_[i]);
        }
        return s + ")";
    }

private:
    void check() const {
        for (auto e : exp_)
            if (e < 0) throw std::invalid_argument("MultiIndex: negative exponent");
    }
    std::vector<std::int64_t> exp_;
};

/// Graded-lexicographic order; gives deterministic iteration for sparse polynomials.
struct GradedLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        auto da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        return a.exponents() < b.exponents();
    }
};

}  // namespace qrd
