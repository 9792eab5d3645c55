#pragma once

#include <map>
#include <ostream>

#include "laurent.hpp"

namespace qdimer {

/// num / den with Laurent numerator and denominator. No gcd reduction;
/// equality is decided by cross-multiplication, which is exact.
class RationalFunction {
public:
    RationalFunction() = default;
    RationalFunction(const LaurentPoly& p) : num_(p), den_(p.variables(), 1) {}
    RationalFunction(LaurentPoly n, LaurentPoly d) : num_(std::move(n)), den_(std::move(d)) {
        num_.require_same(den_);
        if (den_.is_zero()) throw DivisibilityError("rational function with zero denominator");
        normalize();
    }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    const std::vector<std::string>& variables() const { return num_.variables(); }
    bool is_zero() const { return num_.is_zero(); }

    /// Laurent form if the denominator divides; throws otherwise.
    LaurentPoly as_laurent() const { return div_exact(num_, den_); }

    RationalFunction inverse() const {
        if (num_.is_zero()) throw DivisibilityError("inverse of zero rational function");
        return RationalFunction(den_, num_);
    }

    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        return a * b.inverse();
    }
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return a + RationalFunction(-b.num_, b.den_);
    }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }

    RationalFunction pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        return RationalFunction(num_.pow(e), den_.pow(e));
    }

    std::string to_string() const { return "(" + num_.to_string() + ")/(" + den_.to_string() + ")"; }
    friend std::ostream& operator<<(std::ostream& os, const RationalFunction& f) { return os << f.to_string(); }

private:
    // pull monomial denominators into the numerator so that Laurent values stay Laurent
    void normalize() {
        if (den_.is_monomial()) {
            num_ = num_ * den_.inverse();
            den_ = LaurentPoly(num_.variables(), 1);
        }
    }

    LaurentPoly num_;
    LaurentPoly den_;
};

/// p evaluated at rational-function values, over one common denominator:
/// multiply through by prod d_i^{max e_i} n_i^{max -e_i} so every power is nonnegative.
inline RationalFunction evaluate_rational(const LaurentPoly& p, const std::map<std::string, RationalFunction>& point) {
    const auto& vars = p.variables();
    const std::size_t n = vars.size();
    std::vector<const RationalFunction*> val(n, nullptr);
    std::vector<int> hi(n, 0), lo(n, 0);
    for (const auto& [e, c] : p.terms())
        for (std::size_t i = 0; i < n; ++i) {
            hi[i] = std::max(hi[i], e[i]);
            lo[i] = std::max(lo[i], -e[i]);
        }
    std::vector<std::string> out_vars;
    for (std::size_t i = 0; i < n; ++i) {
        if (hi[i] == 0 && lo[i] == 0) continue;
        auto it = point.find(vars[i]);
        if (it == point.end()) throw EvaluationError("no value for variable '" + vars[i] + "'");
        if (it->second.is_zero() && lo[i] > 0)
            throw EvaluationError("variable '" + vars[i] + "' is zero but appears with negative exponent");
        val[i] = &it->second;
        if (out_vars.empty()) out_vars = it->second.variables();
    }
    if (out_vars.empty()) {
        if (!point.empty()) out_vars = point.begin()->second.variables();
        LaurentPoly c(out_vars);
        for (const auto& [e, coef] : p.terms()) c += LaurentPoly(out_vars, coef);
        return c;
    }
    // cached powers of numerators and denominators
    std::vector<std::map<int, LaurentPoly>> npow(n), dpow(n);
    auto power_of = [&](std::map<int, LaurentPoly>& cache, const LaurentPoly& base, int k) -> const LaurentPoly& {
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
        return cache.emplace(k, base.pow(k)).first->second;
    };
    LaurentPoly num(out_vars), den(out_vars, 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (!val[i]) continue;
        den = den * power_of(dpow[i], val[i]->den(), hi[i]) * power_of(npow[i], val[i]->num(), lo[i]);
    }
    for (const auto& [e, c] : p.terms()) {
        LaurentPoly t(out_vars, c);
        for (std::size_t i = 0; i < n; ++i) {
            if (!val[i]) continue;
            t = t * power_of(npow[i], val[i]->num(), e[i] + lo[i]) * power_of(dpow[i], val[i]->den(), hi[i] - e[i]);
        }
        num += t;
    }
    return RationalFunction(num, den);
}

} // namespace qdimer
