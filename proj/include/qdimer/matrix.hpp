#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace qdimer {

using IntMatrix = std::vector<std::vector<int>>;

inline IntMatrix int_zeros(std::size_t n, std::size_t m) { return IntMatrix(n, std::vector<int>(m, 0)); }

inline bool is_skew_symmetric(const IntMatrix& b) {
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i].size() != b.size()) return false;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[i][j] != -b[j][i]) return false;
    }
    return true;
}

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static RationalMatrix from_ints(const IntMatrix& b) {
        RationalMatrix m(b.size(), b.empty() ? 0 : b[0].size());
        for (std::size_t i = 0; i < m.rows_; ++i) {
            if (b[i].size() != m.cols_) throw DomainError("ragged integer matrix");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = b[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    friend RationalMatrix operator*(const RationalMatrix& x, const RationalMatrix& y) {
        if (x.cols_ != y.rows_) throw DomainError("matrix shapes do not multiply");
        RationalMatrix r(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                if (x(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += x(i, k) * y(k, j);
            }
        return r;
    }
    RationalMatrix operator-() const {
        RationalMatrix r = *this;
        for (auto& v : r.a_) v = -v;
        return r;
    }
    RationalMatrix transpose() const {
        RationalMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

    // Gauss-Jordan over Q
    RationalMatrix inverse() const {
        if (rows_ != cols_) throw DomainError("inverse of a non-square matrix");
        const std::size_t n = rows_;
        RationalMatrix a = *this, inv = identity(n);
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            while (p < n && a(p, c).is_zero()) ++p;
            if (p == n) throw SingularityError("matrix is singular");
            if (p != c)
                for (std::size_t j = 0; j < n; ++j) {
                    std::swap(a(p, j), a(c, j));
                    std::swap(inv(p, j), inv(c, j));
                }
            Rational piv = a(c, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(c, j) /= piv;
                inv(c, j) /= piv;
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (i == c || a(i, c).is_zero()) continue;
                Rational f = a(i, c);
                for (std::size_t j = 0; j < n; ++j) {
                    a(i, j) -= f * a(c, j);
                    inv(i, j) -= f * inv(c, j);
                }
            }
        }
        return inv;
    }

    std::vector<std::vector<std::string>> to_strings() const {
        std::vector<std::vector<std::string>> out(rows_, std::vector<std::string>(cols_));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j).to_string();
        return out;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

} // namespace qdimer
