#ifndef BADPROJ_SUBSPACE_HPP
#define BADPROJ_SUBSPACE_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "badproj/psd.hpp"
#include "badproj/rat_matrix.hpp"
#include "badproj/sym_matrix.hpp"

namespace badproj {

/// A linear subspace L of S^n given by an ordered rational basis A_1..A_k
/// (primal Stiefel coordinates). The basis is validated to be linearly
/// independent at construction; k = 0 (the zero subspace) is allowed so that
/// complements compose.
class Subspace {
public:
    Subspace(int n, std::vector<SymMatrix> basis) : n_(n), basis_(std::move(basis)) {
        if (n_ < 1) throw std::invalid_argument("Subspace: n must be >= 1");
        const int N = static_cast<int>(SymMatrix::svec_size(n_));
        if (static_cast<int>(basis_.size()) > N)
            throw std::invalid_argument("Subspace: more generators than dim S^n");
        for (const SymMatrix& a : basis_)
            if (a.n() != n_) throw std::invalid_argument("Subspace: basis dimension mismatch");
        if (!basis_.empty() && stack().rank() != static_cast<int>(basis_.size()))
            throw std::invalid_argument("Subspace: basis is linearly dependent");
    }

    int n() const { return n_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    int ambient_dim() const { return static_cast<int>(SymMatrix::svec_size(n_)); }
    const std::vector<SymMatrix>& basis() const { return basis_; }
    const SymMatrix& basis(int i) const { return basis_[i]; }

    /// k x N matrix whose rows are the raw svec coordinates of the basis.
    RatMatrix stack() const {
        const int N = ambient_dim();
        RatMatrix m(dim(), N);
        for (int i = 0; i < dim(); ++i) {
            const std::vector<Rational>& v = basis_[i].svec();
            for (int j = 0; j < N; ++j) m.at(i, j) = v[j];
        }
        return m;
    }

    SymMatrix combine(const std::vector<Rational>& coeffs) const {
        if (static_cast<int>(coeffs.size()) != dim())
            throw std::invalid_argument("Subspace::combine: wrong coefficient count");
        SymMatrix s(n_);
        for (int i = 0; i < dim(); ++i)
            if (coeffs[i] != 0) s = s + coeffs[i] * basis_[i];
        return s;
    }

    /// Exact coordinates of m in this basis, if m lies in the span.
    std::optional<std::vector<Rational>> coordinates_of(const SymMatrix& m) const {
        if (m.n() != n_) return std::nullopt;
        std::vector<Rational> rhs = m.svec();
        return stack().transpose().solve(rhs);
    }

    bool contains(const SymMatrix& m) const { return coordinates_of(m).has_value(); }

    bool spans_same(const Subspace& other) const {
        if (n_ != other.n_ || dim() != other.dim()) return false;
        for (const SymMatrix& b : other.basis_)
            if (!contains(b)) return false;
        return true;
    }

    /// {Y : A_i o Y = 0 for all i}; dim = n(n+1)/2 - k. The constraint rows
    /// carry the factor 2 on off-diagonal slots, matching trace_inner.
    Subspace orthogonal_complement() const {
        const int N = ambient_dim();
        RatMatrix c(dim(), N);
        for (int i = 0; i < dim(); ++i) {
            for (int idx = 0; idx < N; ++idx) {
                const auto [r, s] = SymMatrix::svec_entry(n_, idx);
                c.at(i, idx) = (r == s) ? basis_[i].svec()[idx] : 2 * basis_[i].svec()[idx];
            }
        }
        std::vector<SymMatrix> comp;
        for (std::vector<Rational>& v : c.nullspace())
            comp.push_back(SymMatrix::from_svec(n_, primitive_vector(std::move(v))));
        return Subspace(n_, std::move(comp));
    }

private:
    int n_;
    std::vector<SymMatrix> basis_;
};

/// Orthogonal complement of the span of possibly dependent generators.
inline Subspace complement_of_span(int n, const std::vector<SymMatrix>& gens) {
    const int N = static_cast<int>(SymMatrix::svec_size(n));
    RatMatrix c(static_cast<int>(gens.size()), N);
    for (size_t i = 0; i < gens.size(); ++i)
        for (int idx = 0; idx < N; ++idx) {
            const auto [r, s] = SymMatrix::svec_entry(n, idx);
            c.at(static_cast<int>(i), idx) =
                (r == s) ? gens[i].svec()[idx] : 2 * gens[i].svec()[idx];
        }
    std::vector<SymMatrix> comp;
    for (std::vector<Rational>& v : c.nullspace())
        comp.push_back(SymMatrix::from_svec(n, primitive_vector(std::move(v))));
    return Subspace(n, std::move(comp));
}

struct PluckerVector {
    int n = 0, k = 0;
    /// k x k minors of the svec stack, size-k column subsets in lexicographic
    /// order; defined up to one global nonzero scalar.
    std::vector<Rational> coordinates;
};

inline PluckerVector plucker(const Subspace& l) {
    const int k = l.dim(), N = l.ambient_dim();
    if (k == 0) throw std::invalid_argument("plucker: zero subspace");
    double logCount = 0;
    for (int i = 1; i <= k; ++i) logCount += std::log2(double(N - k + i)) - std::log2(double(i));
    if (logCount > 22) throw std::invalid_argument("plucker: too many coordinates");
    const RatMatrix st = l.stack();
    PluckerVector pv;
    pv.n = l.n();
    pv.k = k;
    std::vector<int> sub(k);
    for (int i = 0; i < k; ++i) sub[i] = i;
    while (true) {
        RatMatrix minor(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) minor.at(i, j) = st.at(i, sub[j]);
        pv.coordinates.push_back(minor.det());
        int pos = k - 1;
        while (pos >= 0 && sub[pos] == N - k + pos) --pos;
        if (pos < 0) break;
        ++sub[pos];
        for (int i = pos + 1; i < k; ++i) sub[i] = sub[i - 1] + 1;
    }
    return pv;
}

/// Congruence frame G with G^T Q G = diag(d_1..d_s, 0..0), d_i > 0, for a
/// PSD quadric q in span(L). The kernel of q maps to span(e_{s+1}..e_n);
/// the first s rows of G^{-1} generate the linear ideal I_L of q.
struct Congruence {
    RatMatrix g, ginv;
    int s = 0;
    std::vector<Rational> pivots;                 // d_1..d_s
    std::vector<SymMatrix> transformedBasis;      // G^T A_i G
    std::vector<std::vector<Rational>> ilGenerators;  // primitive rows of G^{-1}
};

inline Congruence congruence_normalize(const Subspace& l, const SymMatrix& q) {
    if (!l.contains(q)) throw std::invalid_argument("congruence_normalize: q not in span(L)");
    const PsdReport rep = psd_rank_exact(q);
    if (rep.status == PsdStatus::Indefinite)
        throw std::invalid_argument("congruence_normalize: q is not PSD");
    const int n = q.n();
    // P A P^T = L D L^T with positive diagonal D; G = P^T L^{-T}.
    RatMatrix linvT(n, n);  // L^{-T}, unit upper triangular
    for (int i = 0; i < n; ++i) linvT.at(i, i) = 1;
    for (int col = 0; col < n; ++col) {
        // solve L^T z = e_col by back substitution
        std::vector<Rational> z(n);
        z[col] = 1;
        for (int i = col - 1; i >= 0; --i) {
            Rational acc = 0;
            for (int j = i + 1; j <= col; ++j)
                if (rep.lower.at(j, i) != 0 && z[j] != 0) acc += rep.lower.at(j, i) * z[j];
            z[i] = -acc;
        }
        for (int i = 0; i < n; ++i) linvT.at(i, col) = z[i];
    }
    Congruence c;
    c.s = rep.rank;
    c.g = RatMatrix(n, n);
    for (int i = 0; i < n; ++i) {
        int kpos = 0;
        while (rep.perm[kpos] != i) ++kpos;
        for (int j = 0; j < n; ++j) c.g.at(i, j) = linvT.at(kpos, j);
    }
    c.ginv = c.g.inverse();
    for (const PivotBlock& b : rep.blocks) c.pivots.push_back(b.d00);
    for (const SymMatrix& a : l.basis()) c.transformedBasis.push_back(a.congruence(c.g));
    for (int r = 0; r < c.s; ++r) {
        std::vector<Rational> row(n);
        for (int j = 0; j < n; ++j) row[j] = c.ginv.at(r, j);
        c.ilGenerators.push_back(primitive_vector(std::move(row)));
    }
    return c;
}

}  // namespace badproj

#endif
