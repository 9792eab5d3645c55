#pragma once

// The small interface seeds and weights need from a value type:
// one, inverse, exact division, integer powers. Overloaded for
// Rational (numeric runs), LaurentPoly and RationalFunction (symbolic runs).

#include "laurent.hpp"
#include "rational.hpp"
#include "rational_function.hpp"

namespace qdimer {

inline Rational one_like(const Rational&) { return 1; }
inline LaurentPoly one_like(const LaurentPoly& v) { return LaurentPoly(v.variables(), 1); }
inline RationalFunction one_like(const RationalFunction& v) { return LaurentPoly(v.variables(), 1); }

inline Rational inverse_of(const Rational& v) {
    if (v.is_zero()) throw EvaluationError("inverse of zero");
    return Rational(1) / v;
}
inline LaurentPoly inverse_of(const LaurentPoly& v) { return v.inverse(); }
inline RationalFunction inverse_of(const RationalFunction& v) { return v.inverse(); }

inline Rational divide_exact(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw EvaluationError("division by zero");
    return a / b;
}
inline LaurentPoly divide_exact(const LaurentPoly& a, const LaurentPoly& b) { return div_exact(a, b); }
inline RationalFunction divide_exact(const RationalFunction& a, const RationalFunction& b) { return a / b; }

inline bool value_is_zero(const Rational& v) { return v.is_zero(); }
inline bool value_is_zero(const LaurentPoly& v) { return v.is_zero(); }
inline bool value_is_zero(const RationalFunction& v) { return v.is_zero(); }

template <class V>
V power(const V& v, int e) {
    if (e < 0) return power(inverse_of(v), -e);
    V r = one_like(v), b = v;
    while (e > 0) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

inline std::string value_string(const Rational& v) { return v.to_string(); }
inline std::string value_string(const LaurentPoly& v) { return v.to_string(); }
inline std::string value_string(const RationalFunction& v) { return v.to_string(); }

} // namespace qdimer
