#ifndef BADPROJ_SYM_MATRIX_HPP
#define BADPROJ_SYM_MATRIX_HPP

#include <cassert>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "badproj/rat_matrix.hpp"
#include "badproj/rational.hpp"

namespace badproj {

/// Symmetric n x n matrix over Q, stored as the upper triangle in svec order
/// (11),(12),...,(1n),(22),(23),... Off-diagonal svec slots hold the raw
/// matrix entry; the factor 2 lives in trace_inner, so no square roots ever
/// enter and everything stays rational.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int n) : n_(n), u_(svec_size(n)) {
        if (n < 1) throw std::invalid_argument("SymMatrix: n must be >= 1");
    }

    /// Row-major full matrix; must be exactly symmetric.
    static SymMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
        const int n = static_cast<int>(rows.size());
        SymMatrix m(n);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(rows[i].size()) != n)
                throw std::invalid_argument("SymMatrix: ragged rows");
            for (int j = i; j < n; ++j) {
                if (rows[j][i] != rows[i][j])
                    throw std::invalid_argument("SymMatrix: input is not symmetric");
                m.at(i, j) = rows[i][j];
            }
        }
        return m;
    }

    static SymMatrix identity(int n) {
        SymMatrix m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static SymMatrix diag(const std::vector<Rational>& d) {
        SymMatrix m(static_cast<int>(d.size()));
        for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
        return m;
    }

    static SymMatrix from_svec(int n, const std::vector<Rational>& v) {
        SymMatrix m(n);
        assert(v.size() == svec_size(n));
        m.u_ = v;
        return m;
    }

    static size_t svec_size(int n) { return static_cast<size_t>(n) * (n + 1) / 2; }

    /// Position of entry (i,j), i <= j, in svec order.
    static size_t svec_index(int n, int i, int j) {
        assert(0 <= i && i <= j && j < n);
        return static_cast<size_t>(i) * n - static_cast<size_t>(i) * (i - 1) / 2 + (j - i);
    }

    /// Inverse of svec_index.
    static std::pair<int, int> svec_entry(int n, size_t idx) {
        for (int i = 0; i < n; ++i) {
            const size_t rowLen = static_cast<size_t>(n - i);
            if (idx < rowLen) return {i, i + static_cast<int>(idx)};
            idx -= rowLen;
        }
        throw std::out_of_range("svec_entry");
    }

    int n() const { return n_; }

    Rational& at(int i, int j) {
        if (i > j) std::swap(i, j);
        return u_[svec_index(n_, i, j)];
    }
    const Rational& at(int i, int j) const {
        if (i > j) std::swap(i, j);
        return u_[svec_index(n_, i, j)];
    }

    const std::vector<Rational>& svec() const { return u_; }

    Rational trace() const {
        Rational t = 0;
        for (int i = 0; i < n_; ++i) t += at(i, i);
        return t;
    }

    bool is_zero() const {
        for (const Rational& q : u_)
            if (q != 0) return false;
        return true;
    }

    RatMatrix to_dense() const {
        RatMatrix d(n_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) d.at(i, j) = at(i, j);
        return d;
    }

    /// v^T A v.
    Rational quad(const std::vector<Rational>& v) const {
        assert(static_cast<int>(v.size()) == n_);
        Rational s = 0;
        for (int i = 0; i < n_; ++i) {
            if (v[i] == 0) continue;
            s += at(i, i) * v[i] * v[i];
            for (int j = i + 1; j < n_; ++j)
                if (v[j] != 0) s += 2 * at(i, j) * v[i] * v[j];
        }
        return s;
    }

    friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
        check_dims(a, b);
        SymMatrix s = a;
        for (size_t i = 0; i < s.u_.size(); ++i) s.u_[i] += b.u_[i];
        return s;
    }
    friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
        check_dims(a, b);
        SymMatrix s = a;
        for (size_t i = 0; i < s.u_.size(); ++i) s.u_[i] -= b.u_[i];
        return s;
    }
    friend SymMatrix operator*(const Rational& c, const SymMatrix& a) {
        SymMatrix s = a;
        for (Rational& q : s.u_) q *= c;
        return s;
    }
    friend SymMatrix operator-(const SymMatrix& a) { return Rational(-1) * a; }

    friend bool operator==(const SymMatrix& a, const SymMatrix& b) {
        return a.n_ == b.n_ && a.u_ == b.u_;
    }

    /// Matrix product A*B; not symmetric in general.
    friend RatMatrix mat_mul(const SymMatrix& a, const SymMatrix& b) {
        check_dims(a, b);
        return a.to_dense() * b.to_dense();
    }

    /// Congruence transform G^T A G for a general rational G.
    SymMatrix congruence(const RatMatrix& g) const {
        assert(g.rows() == n_);
        const RatMatrix r = g.transpose() * to_dense() * g;
        SymMatrix out(g.cols());
        for (int i = 0; i < g.cols(); ++i)
            for (int j = i; j < g.cols(); ++j) {
                assert(r.at(i, j) == r.at(j, i));
                out.at(i, j) = r.at(i, j);
            }
        return out;
    }

private:
    static void check_dims(const SymMatrix& a, const SymMatrix& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("SymMatrix: dimension mismatch");
    }

    int n_ = 0;
    std::vector<Rational> u_;
};

/// A o B = trace(AB), computed exactly from the upper triangles.
inline Rational trace_inner(const SymMatrix& a, const SymMatrix& b) {
    if (a.n() != b.n()) throw std::invalid_argument("trace_inner: dimension mismatch");
    Rational s = 0;
    for (int i = 0; i < a.n(); ++i) {
        s += a.at(i, i) * b.at(i, i);
        for (int j = i + 1; j < a.n(); ++j) s += 2 * a.at(i, j) * b.at(i, j);
    }
    return s;
}

}  // namespace badproj

#endif
