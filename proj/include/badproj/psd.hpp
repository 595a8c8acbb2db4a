#ifndef BADPROJ_PSD_HPP
#define BADPROJ_PSD_HPP

#include <utility>
#include <vector>

#include "badproj/rat_matrix.hpp"
#include "badproj/sym_matrix.hpp"

namespace badproj {

enum class PsdStatus { PositiveDefinite, PositiveSemidefinite, Indefinite };

/// One pivot of the symmetric elimination: a 1x1 diagonal pivot, or a 2x2
/// block [[0,c],[c,0]] taken when every remaining diagonal entry vanishes.
/// A 2x2 block has negative determinant, so its occurrence certifies
/// indefiniteness.
struct PivotBlock {
    int size = 1;
    Rational d00, d01;  // 1x1: d00; 2x2: [[d00, d01], [d01, 0]] with d00 = 0
};

/// Exact rank-revealing factorization P A P^T = L D L^T with L unit lower
/// triangular and D block diagonal (1x1 / 2x2 blocks), plus the kernel.
struct PsdReport {
    PsdStatus status = PsdStatus::PositiveSemidefinite;
    int rank = 0;
    std::vector<std::vector<Rational>> kernel;  // exact: A v = 0 for each v
    std::vector<int> perm;                      // perm[k] = original index at position k
    RatMatrix lower;                            // L, in permuted coordinates
    std::vector<PivotBlock> blocks;

    /// Rebuild the input from the factorization; bit-exact identity.
    SymMatrix reconstruct() const {
        const int n = lower.rows();
        RatMatrix d(n, n);
        int k = 0;
        for (const PivotBlock& b : blocks) {
            if (b.size == 1) {
                d.at(k, k) = b.d00;
                k += 1;
            } else {
                d.at(k, k) = b.d00;
                d.at(k, k + 1) = b.d01;
                d.at(k + 1, k) = b.d01;
                k += 2;
            }
        }
        const RatMatrix ldlt = lower * d * lower.transpose();
        SymMatrix a(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) a.at(perm[i], perm[j]) = ldlt.at(i, j);
        return a;
    }
};

/// Pivoted symmetric Gaussian elimination over Q.
///
/// Status is PositiveDefinite iff there are n positive 1x1 pivots,
/// PositiveSemidefinite iff all pivots are positive and the trailing Schur
/// complement vanishes, Indefinite otherwise (a negative pivot or a 2x2
/// block). PSD matrices always admit diagonal pivoting, so the 2x2 branch
/// only fires on indefinite input.
inline PsdReport psd_rank_exact(const SymMatrix& a) {
    const int n = a.n();
    RatMatrix s = a.to_dense();
    PsdReport rep;
    rep.perm.resize(n);
    for (int i = 0; i < n; ++i) rep.perm[i] = i;
    rep.lower = RatMatrix::identity(n);

    bool sawNegative = false, saw2x2 = false;

    // Swap pivot positions p and q. Only the already-filled multiplier
    // columns of L (columns < filled) move with the rows; the untouched
    // identity part must stay in place.
    auto swapIndices = [&](int p, int q, int filled) {
        if (p == q) return;
        for (int j = 0; j < n; ++j) std::swap(s.at(p, j), s.at(q, j));
        for (int i = 0; i < n; ++i) std::swap(s.at(i, p), s.at(i, q));
        for (int j = 0; j < filled; ++j) std::swap(rep.lower.at(p, j), rep.lower.at(q, j));
        std::swap(rep.perm[p], rep.perm[q]);
    };

    int k = 0;
    while (k < n) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (s.at(i, i) != 0) { piv = i; break; }
        if (piv >= 0) {
            swapIndices(k, piv, k);
            const Rational d = s.at(k, k);
            if (d < 0) sawNegative = true;
            PivotBlock b;
            b.size = 1;
            b.d00 = d;
            rep.blocks.push_back(b);
            for (int i = k + 1; i < n; ++i) {
                if (s.at(i, k) == 0) continue;
                rep.lower.at(i, k) = s.at(i, k) / d;
            }
            for (int i = k + 1; i < n; ++i) {
                const Rational li = rep.lower.at(i, k);
                if (li == 0) continue;
                for (int j = i; j < n; ++j) {
                    const Rational lj = rep.lower.at(j, k);
                    if (lj == 0) continue;
                    const Rational upd = li * d * lj;
                    s.at(i, j) -= upd;
                    if (i != j) s.at(j, i) -= upd;
                }
            }
            for (int i = k; i < n; ++i) { s.at(i, k) = 0; s.at(k, i) = 0; }
            rep.rank += 1;
            k += 1;
            continue;
        }
        // every remaining diagonal entry is zero; look for an off-diagonal one
        int oi = -1, oj = -1;
        for (int i = k; i < n && oi < 0; ++i)
            for (int j = i + 1; j < n; ++j)
                if (s.at(i, j) != 0) { oi = i; oj = j; break; }
        if (oi < 0) break;  // trailing Schur complement is zero
        saw2x2 = true;
        swapIndices(k, oi, k);
        swapIndices(k + 1, oj, k);  // oj > oi >= k, untouched by the first swap
        const Rational c = s.at(k, k + 1);
        PivotBlock b;
        b.size = 2;
        b.d00 = 0;
        b.d01 = c;
        rep.blocks.push_back(b);
        // B = [[0,c],[c,0]], B^{-1} = [[0,1/c],[1/c,0]]
        for (int i = k + 2; i < n; ++i) {
            rep.lower.at(i, k) = s.at(i, k + 1) / c;
            rep.lower.at(i, k + 1) = s.at(i, k) / c;
        }
        for (int i = k + 2; i < n; ++i) {
            const Rational li0 = rep.lower.at(i, k), li1 = rep.lower.at(i, k + 1);
            if (li0 == 0 && li1 == 0) continue;
            for (int j = i; j < n; ++j) {
                const Rational lj0 = rep.lower.at(j, k), lj1 = rep.lower.at(j, k + 1);
                if (lj0 == 0 && lj1 == 0) continue;
                const Rational upd = c * (li0 * lj1 + li1 * lj0);
                s.at(i, j) -= upd;
                if (i != j) s.at(j, i) -= upd;
            }
        }
        for (int i = k; i < n; ++i) {
            s.at(i, k) = 0; s.at(k, i) = 0;
            s.at(i, k + 1) = 0; s.at(k + 1, i) = 0;
        }
        rep.rank += 2;
        k += 2;
    }

    if (saw2x2 || sawNegative)
        rep.status = PsdStatus::Indefinite;
    else
        rep.status = (rep.rank == n) ? PsdStatus::PositiveDefinite
                                     : PsdStatus::PositiveSemidefinite;

    // kernel: v = P^T L^{-T} e_m for each trailing position m >= rank
    for (int m = rep.rank; m < n; ++m) {
        std::vector<Rational> z(n);
        z[m] = 1;
        for (int i = m - 1; i >= 0; --i) {
            Rational acc = 0;
            for (int j = i + 1; j <= m; ++j)
                if (rep.lower.at(j, i) != 0 && z[j] != 0) acc += rep.lower.at(j, i) * z[j];
            z[i] = -acc;
        }
        std::vector<Rational> v(n);
        for (int i = 0; i < n; ++i) v[rep.perm[i]] = z[i];
        rep.kernel.push_back(primitive_vector(std::move(v)));
    }
    return rep;
}

inline bool is_psd(const SymMatrix& a) {
    return psd_rank_exact(a).status != PsdStatus::Indefinite;
}

/// Exact kernel basis of a symmetric matrix, as columns of an n x (n-rank)
/// matrix.
inline RatMatrix kernel_matrix(const PsdReport& rep, int n) {
    RatMatrix k(n, static_cast<int>(rep.kernel.size()));
    for (int c = 0; c < k.cols(); ++c)
        for (int i = 0; i < n; ++i) k.at(i, c) = rep.kernel[c][i];
    return k;
}

}  // namespace badproj

#endif
