#ifndef BADPROJ_RAT_MATRIX_HPP
#define BADPROJ_RAT_MATRIX_HPP

#include <cassert>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "badproj/rational.hpp"

namespace badproj {

/// Dense matrix over Q. Row-major. Workhorse for complements, kernels,
/// membership solves and congruence frames; everything is exact.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static RatMatrix identity(int n) {
        RatMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }

    Rational& at(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const Rational& at(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    RatMatrix transpose() const {
        RatMatrix t(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
        assert(a.c_ == b.r_);
        RatMatrix p(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int l = 0; l < a.c_; ++l) {
                if (a.at(i, l) == 0) continue;
                for (int j = 0; j < b.c_; ++j)
                    if (b.at(l, j) != 0) p.at(i, j) += a.at(i, l) * b.at(l, j);
            }
        return p;
    }

    friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
        assert(a.r_ == b.r_ && a.c_ == b.c_);
        RatMatrix s = a;
        for (size_t i = 0; i < s.a_.size(); ++i) s.a_[i] += b.a_[i];
        return s;
    }

    friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
        assert(a.r_ == b.r_ && a.c_ == b.c_);
        RatMatrix s = a;
        for (size_t i = 0; i < s.a_.size(); ++i) s.a_[i] -= b.a_[i];
        return s;
    }

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

    std::vector<Rational> mul_vec(const std::vector<Rational>& v) const {
        assert(static_cast<int>(v.size()) == c_);
        std::vector<Rational> out(r_);
        for (int i = 0; i < r_; ++i) {
            Rational s = 0;
            for (int j = 0; j < c_; ++j)
                if (at(i, j) != 0 && v[j] != 0) s += at(i, j) * v[j];
            out[i] = s;
        }
        return out;
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    std::vector<int> rref() {
        std::vector<int> pivots;
        int row = 0;
        for (int col = 0; col < c_ && row < r_; ++col) {
            int p = -1;
            for (int i = row; i < r_; ++i)
                if (at(i, col) != 0) { p = i; break; }
            if (p < 0) continue;
            if (p != row)
                for (int j = 0; j < c_; ++j) std::swap(at(p, j), at(row, j));
            const Rational inv = 1 / at(row, col);
            for (int j = col; j < c_; ++j) at(row, j) *= inv;
            for (int i = 0; i < r_; ++i) {
                if (i == row || at(i, col) == 0) continue;
                const Rational f = at(i, col);
                for (int j = col; j < c_; ++j) at(i, j) -= f * at(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    int rank() const {
        RatMatrix m = *this;
        return static_cast<int>(m.rref().size());
    }

    /// Basis of the right kernel {v : Av = 0}, one vector per free column.
    std::vector<std::vector<Rational>> nullspace() const {
        RatMatrix m = *this;
        const std::vector<int> piv = m.rref();
        std::vector<bool> isPivot(c_, false);
        for (int p : piv) isPivot[p] = true;
        std::vector<std::vector<Rational>> basis;
        for (int fc = 0; fc < c_; ++fc) {
            if (isPivot[fc]) continue;
            std::vector<Rational> v(c_);
            v[fc] = 1;
            for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m.at(static_cast<int>(r), fc);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    /// One exact solution of Ax = b (free variables set to 0), or nullopt.
    std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const {
        assert(static_cast<int>(b.size()) == r_);
        RatMatrix aug(r_, c_ + 1);
        for (int i = 0; i < r_; ++i) {
            for (int j = 0; j < c_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, c_) = b[i];
        }
        const std::vector<int> piv = aug.rref();
        if (!piv.empty() && piv.back() == c_) return std::nullopt;  // inconsistent
        std::vector<Rational> x(c_);
        for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at(static_cast<int>(r), c_);
        return x;
    }

    RatMatrix inverse() const {
        if (r_ != c_) throw std::invalid_argument("inverse of non-square matrix");
        RatMatrix aug(r_, 2 * c_);
        for (int i = 0; i < r_; ++i) {
            for (int j = 0; j < c_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, c_ + i) = 1;
        }
        const std::vector<int> piv = aug.rref();
        if (static_cast<int>(piv.size()) != r_ || piv.back() != r_ - 1)
            throw std::invalid_argument("matrix is singular");
        RatMatrix inv(r_, c_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) inv.at(i, j) = aug.at(i, c_ + j);
        return inv;
    }

    Rational det() const {
        if (r_ != c_) throw std::invalid_argument("det of non-square matrix");
        RatMatrix m = *this;
        Rational d = 1;
        for (int col = 0; col < c_; ++col) {
            int p = -1;
            for (int i = col; i < r_; ++i)
                if (m.at(i, col) != 0) { p = i; break; }
            if (p < 0) return 0;
            if (p != col) {
                for (int j = 0; j < c_; ++j) std::swap(m.at(p, j), m.at(col, j));
                d = -d;
            }
            d *= m.at(col, col);
            const Rational inv = 1 / m.at(col, col);
            for (int i = col + 1; i < r_; ++i) {
                if (m.at(i, col) == 0) continue;
                const Rational f = m.at(i, col) * inv;
                for (int j = col; j < c_; ++j) m.at(i, j) -= f * m.at(col, j);
            }
        }
        return d;
    }

private:
    int r_ = 0, c_ = 0;
    std::vector<Rational> a_;
};

/// Scale a rational vector to a primitive integer vector whose first nonzero
/// entry is positive. Canonical representative of the ray through v.
inline std::vector<Rational> primitive_vector(std::vector<Rational> v) {
    Integer den = 1, num = 0;
    for (const Rational& q : v) {
        if (q == 0) continue;
        den = lcm(den, q.get_den());
    }
    for (const Rational& q : v) {
        if (q == 0) continue;
        Integer n = abs(q.get_num() * (den / q.get_den()));
        num = (num == 0) ? n : gcd(num, n);
    }
    if (num == 0) return v;
    Rational scale(den, num);
    scale.canonicalize();
    for (Rational& q : v) q *= scale;
    for (const Rational& q : v) {
        if (q != 0) {
            if (q < 0)
                for (Rational& w : v) w = -w;
            break;
        }
    }
    return v;
}

}  // namespace badproj

#endif
