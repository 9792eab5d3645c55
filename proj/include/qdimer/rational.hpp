#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <ostream>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace qdimer {

/// Exact rational number, always stored in lowest terms.
class Rational {
public:
    Rational() = default;
    template <std::integral T>
    Rational(T n) : v_(static_cast<long>(n)) {}
    Rational(long num, long den) {
        if (den == 0) throw EvaluationError("rational with zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    static Rational parse(std::string_view s) {
        std::string t(s);
        while (!t.empty() && t.front() == ' ') t.erase(t.begin());
        while (!t.empty() && t.back() == ' ') t.pop_back();
        if (t.empty()) throw ParseError("empty rational literal");
        if (t.front() == '+') t.erase(t.begin());
        mpq_class q;
        try {
            auto slash = t.find('/');
            if (slash == std::string::npos) {
                q = mpq_class(mpz_class(t, 10));
            } else {
                mpz_class den(t.substr(slash + 1), 10);
                if (den == 0) throw EvaluationError("rational with zero denominator: " + t);
                q = mpq_class(mpz_class(t.substr(0, slash), 10), den);
            }
        } catch (const std::invalid_argument&) {
            throw ParseError("bad rational literal '" + t + "'");
        }
        return Rational(q);
    }

    const mpq_class& raw() const { return v_; }
    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    std::string to_string() const { return v_.get_str(10); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw EvaluationError("division by zero");
        v_ /= o.v_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { return Rational(mpq_class(-v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    Rational pow(int e) const {
        if (e < 0) {
            if (is_zero()) throw EvaluationError("zero raised to a negative power");
            return Rational(1) / pow(-e);
        }
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
        return Rational(mpq_class(n, d));
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    mpq_class v_{0};
};

} // namespace qdimer
