#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace qdimer {

using Exponent = std::vector<int>;

/// Natural order on variable names: "A2" < "A10", digit runs compare numerically.
inline bool variable_less(std::string_view a, std::string_view b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
        bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
        if (da && db) {
            std::size_t i2 = i, j2 = j;
            while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
            while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
            auto na = a.substr(i, i2 - i), nb = b.substr(j, j2 - j);
            while (na.size() > 1 && na.front() == '0') na.remove_prefix(1);
            while (nb.size() > 1 && nb.front() == '0') nb.remove_prefix(1);
            if (na.size() != nb.size()) return na.size() < nb.size();
            if (na != nb) return na < nb;
            i = i2;
            j = j2;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
    return a < b;
}

inline std::vector<std::string> sorted_variables(std::vector<std::string> v) {
    std::sort(v.begin(), v.end(), [](const std::string& x, const std::string& y) { return variable_less(x, y); });
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

/// Multivariate Laurent polynomial with exact rational coefficients.
/// Terms live in a map keyed by exponent vector, so iteration order is the
/// lexicographic order on exponents; no zero coefficients are ever stored.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(std::vector<std::string> vars) : vars_(std::move(vars)) { check_vars(); }
    LaurentPoly(std::vector<std::string> vars, const Rational& c) : vars_(std::move(vars)) {
        check_vars();
        if (!c.is_zero()) terms_.emplace(Exponent(vars_.size(), 0), c);
    }

    static LaurentPoly monomial(std::vector<std::string> vars, Exponent e, const Rational& c = 1) {
        LaurentPoly p(std::move(vars));
        if (e.size() != p.vars_.size()) throw AlignmentError("exponent length does not match variable list");
        p.add_term(std::move(e), c);
        return p;
    }
    static LaurentPoly variable(std::vector<std::string> vars, std::string_view name, int power = 1) {
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end()) throw DomainError("unknown variable '" + std::string(name) + "'");
        Exponent e(vars.size(), 0);
        e[static_cast<std::size_t>(it - vars.begin())] = power;
        return monomial(std::move(vars), std::move(e));
    }

    const std::vector<std::string>& variables() const { return vars_; }
    const std::map<Exponent, Rational>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                                                  [](int x) { return x == 0; }));
    }
    Rational coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    int index_of(std::string_view name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
    }

    void add_term(Exponent e, const Rational& c) {
        if (e.size() != vars_.size()) throw AlignmentError("exponent length does not match variable list");
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(std::move(e), c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        require_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        require_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    LaurentPoly& operator*=(const Rational& c) {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, v] : terms_) v *= c;
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        a.require_same(b);
        LaurentPoly r(a.vars_);
        Exponent e(a.vars_.size());
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
    friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { return a *= c; }
    LaurentPoly operator-() const {
        LaurentPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    /// Inverse of a monomial; anything else is not a unit in the Laurent ring.
    LaurentPoly inverse() const {
        if (!is_monomial()) throw DivisibilityError("only monomials are invertible, got " + to_string());
        const auto& [e, c] = *terms_.begin();
        Exponent ne(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) ne[i] = -e[i];
        return monomial(vars_, ne, Rational(1) / c);
    }

    LaurentPoly pow(int n) const {
        if (n < 0) return inverse().pow(-n);
        LaurentPoly result(vars_, 1), base = *this;
        while (n > 0) {
            if (n & 1) result = result * base;
            n >>= 1;
            if (n) base = base * base;
        }
        return result;
    }

    /// Re-express over a superset variable list.
    LaurentPoly with_variables(const std::vector<std::string>& target) const {
        std::vector<int> where(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto it = std::find(target.begin(), target.end(), vars_[i]);
            where[i] = it == target.end() ? -1 : static_cast<int>(it - target.begin());
        }
        LaurentPoly r(target);
        for (const auto& [e, c] : terms_) {
            Exponent ne(target.size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (where[i] < 0) throw AlignmentError("variable '" + vars_[i] + "' missing from target list");
                ne[static_cast<std::size_t>(where[i])] = e[i];
            }
            r.add_term(std::move(ne), c);
        }
        return r;
    }

    /// Canonical text: terms in ascending exponent order joined by " + ",
    /// each written coefficient*Name^e with zero exponents omitted.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) out += " + ";
            first = false;
            out += c.to_string();
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0) out += "*" + vars_[i] + "^" + std::to_string(e[i]);
        }
        return out;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);
    friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

    void require_same(const LaurentPoly& o) const {
        if (vars_ != o.vars_) throw AlignmentError("variable lists differ; align() first");
    }

private:
    void check_vars() const {
        std::set<std::string> seen;
        for (const auto& v : vars_) {
            if (v.empty()) throw DomainError("empty variable name");
            if (!seen.insert(v).second) throw DomainError("duplicate variable '" + v + "'");
        }
    }

    std::vector<std::string> vars_;
    std::map<Exponent, Rational> terms_;
};

inline std::vector<std::string> union_variables(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::string> all = a;
    all.insert(all.end(), b.begin(), b.end());
    return sorted_variables(std::move(all));
}

inline std::pair<LaurentPoly, LaurentPoly> align(const LaurentPoly& a, const LaurentPoly& b) {
    auto vars = union_variables(a.variables(), b.variables());
    return {a.with_variables(vars), b.with_variables(vars)};
}

inline bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
    auto [x, y] = align(a, b);
    return x.terms_ == y.terms_;
}

enum class ArithOp { add, sub, mul };

inline LaurentPoly laurent_arith(const LaurentPoly& a, const LaurentPoly& b, ArithOp op) {
    switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    }
    throw DomainError("unknown arithmetic op");
}

/// Exact quotient a / b in the Laurent ring, or DivisibilityError.
inline LaurentPoly div_exact(const LaurentPoly& a, const LaurentPoly& b) {
    a.require_same(b);
    if (b.is_zero()) throw DivisibilityError("division by the zero polynomial");
    LaurentPoly q(a.variables());
    if (a.is_zero()) return q;
    const std::size_t n = a.variables().size();
    if (b.is_monomial()) return a * b.inverse();

    // quotient exponents are trapped in a box determined by the extreme
    // exponents of a and b; leaving it proves non-divisibility
    auto extremes = [n](const LaurentPoly& p) {
        Exponent lo(n, 0), hi(n, 0);
        bool first = true;
        for (const auto& [e, c] : p.terms()) {
            for (std::size_t i = 0; i < n; ++i) {
                lo[i] = first ? e[i] : std::min(lo[i], e[i]);
                hi[i] = first ? e[i] : std::max(hi[i], e[i]);
            }
            first = false;
        }
        return std::make_pair(lo, hi);
    };
    auto [alo, ahi] = extremes(a);
    auto [blo, bhi] = extremes(b);

    const auto& [be, bc] = *b.terms().rbegin();
    LaurentPoly r = a;
    while (!r.is_zero()) {
        const auto& [re, rc] = *r.terms().rbegin();
        Exponent te(n);
        for (std::size_t i = 0; i < n; ++i) {
            te[i] = re[i] - be[i];
            if (te[i] < alo[i] - blo[i] || te[i] > ahi[i] - bhi[i])
                throw DivisibilityError("not divisible: " + a.to_string() + " by " + b.to_string());
        }
        auto t = LaurentPoly::monomial(a.variables(), te, rc / bc);
        q += t;
        r -= t * b;
    }
    return q;
}

/// Evaluate at a rational point. Every variable with a nonzero exponent must be assigned.
inline Rational evaluate(const LaurentPoly& p, const std::map<std::string, Rational>& point) {
    const auto& vars = p.variables();
    std::vector<const Rational*> val(vars.size(), nullptr);
    for (std::size_t i = 0; i < vars.size(); ++i) {
        auto it = point.find(vars[i]);
        if (it != point.end()) val[i] = &it->second;
    }
    Rational total = 0;
    for (const auto& [e, c] : p.terms()) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!val[i]) throw EvaluationError("no value for variable '" + vars[i] + "'");
            if (e[i] < 0 && val[i]->is_zero())
                throw EvaluationError("variable '" + vars[i] + "' is zero but appears with negative exponent");
            t *= val[i]->pow(e[i]);
        }
        total += t;
    }
    return total;
}

/// Replace each variable by a Laurent polynomial; images must share one variable list.
/// Negative exponents require monomial images.
inline LaurentPoly substitute(const LaurentPoly& p, const std::map<std::string, LaurentPoly>& images) {
    if (images.empty()) {
        if (!p.is_constant()) throw DomainError("substitution has no images");
        return p;
    }
    const auto& tv = images.begin()->second.variables();
    for (const auto& [k, v] : images)
        if (v.variables() != tv) throw AlignmentError("substitution images use different variable lists");
    const auto& vars = p.variables();
    std::vector<const LaurentPoly*> img(vars.size(), nullptr);
    for (std::size_t i = 0; i < vars.size(); ++i) {
        auto it = images.find(vars[i]);
        if (it != images.end()) img[i] = &it->second;
    }
    // powers get reused a lot
    std::map<std::pair<std::size_t, int>, LaurentPoly> cache;
    auto power = [&](std::size_t i, int e) -> const LaurentPoly& {
        auto key = std::make_pair(i, e);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, img[i]->pow(e)).first;
        return it->second;
    };
    LaurentPoly out(tv);
    for (const auto& [e, c] : p.terms()) {
        LaurentPoly t(tv, c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!img[i]) throw DomainError("no image for variable '" + vars[i] + "'");
            t = t * power(i, e[i]);
        }
        out += t;
    }
    return out;
}

namespace detail {
inline std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == sep) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    return out;
}

struct ParsedTerm {
    Rational coeff = 1;
    std::vector<std::pair<std::string, int>> factors;
};

inline std::vector<ParsedTerm> parse_terms(std::string_view text) {
    std::vector<ParsedTerm> out;
    auto body = trim(text);
    if (body.empty()) throw ParseError("empty polynomial text");
    if (body == "0") return out;
    for (const auto& term : split(body, '+')) {
        if (term.empty()) throw ParseError("empty term in '" + std::string(text) + "'");
        ParsedTerm t;
        auto factors = split(term, '*');
        std::size_t start = 0;
        const std::string& f0 = factors[0];
        bool numeric = !f0.empty() && (std::isdigit(static_cast<unsigned char>(f0[0])) ||
                                       (f0.size() > 1 && f0[0] == '-'));
        if (numeric) {
            t.coeff = Rational::parse(f0);
            start = 1;
        } else if (!f0.empty() && f0[0] == '-') {
            throw ParseError("bad term '" + term + "'");
        }
        for (std::size_t i = start; i < factors.size(); ++i) {
            const auto& f = factors[i];
            auto caret = f.find('^');
            std::string name = trim(f.substr(0, caret));
            if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
                throw ParseError("bad factor '" + f + "'");
            int e = 1;
            if (caret != std::string::npos) {
                try {
                    std::size_t used = 0;
                    std::string es = trim(f.substr(caret + 1));
                    e = std::stoi(es, &used);
                    if (used != es.size()) throw ParseError("bad exponent in '" + f + "'");
                } catch (const std::logic_error&) {
                    throw ParseError("bad exponent in '" + f + "'");
                }
            }
            t.factors.emplace_back(name, e);
        }
        out.push_back(std::move(t));
    }
    return out;
}
} // namespace detail

/// Parse text like "1*A1^2 + -3/2*A2^-1" with a given variable list.
inline LaurentPoly parse_laurent(std::string_view text, const std::vector<std::string>& vars) {
    LaurentPoly p(vars);
    for (const auto& t : detail::parse_terms(text)) {
        Exponent e(vars.size(), 0);
        for (const auto& [name, k] : t.factors) {
            int idx = p.index_of(name);
            if (idx < 0) throw ParseError("unknown variable '" + name + "'");
            e[static_cast<std::size_t>(idx)] += k;
        }
        p.add_term(std::move(e), t.coeff);
    }
    return p;
}

/// Parse, inferring the variable list (naturally sorted) from the text.
inline LaurentPoly parse_laurent(std::string_view text) {
    std::vector<std::string> names;
    for (const auto& t : detail::parse_terms(text))
        for (const auto& f : t.factors) names.push_back(f.first);
    return parse_laurent(text, sorted_variables(std::move(names)));
}

} // namespace qdimer
