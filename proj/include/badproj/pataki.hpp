#ifndef BADPROJ_PATAKI_HPP
#define BADPROJ_PATAKI_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "badproj/sdp.hpp"
#include "badproj/subspace.hpp"

namespace badproj::pataki {

struct Options {
    unsigned long denomBound = 10000;       // first rationalization attempt
    unsigned long denomBoundMax = 100000000;  // escalate up to here on failure
    sdp::SdpOptions sdpOptions;
};

enum class Certified { Exact, NumericOnly };

/// Spectrahedral rank s(L) with certificates. The witness is an exact PSD
/// element of L of rank s; the chain is a sequence of PSD reducing
/// certificates, each expressed in the coordinates of the face it cuts
/// (sizes strictly decrease). Exactness means witness rank equals the final
/// face dimension, pinning s from both sides.
struct RankReport {
    int s = 0;
    Certified certified = Certified::NumericOnly;
    std::optional<SymMatrix> witness;   // in S^n
    std::vector<SymMatrix> chain;       // face-local reducing certificates
    double numericEstimate = -1;
    bool rankUnstable = false;
    std::string note;
};

namespace detail {

inline std::vector<Rational> float_coords(const Eigen::MatrixXd& x, const Subspace& basis,
                                          unsigned long denomBound) {
    const int n = basis.n();
    const int N = basis.ambient_dim();
    Eigen::MatrixXd stack(N, basis.dim());
    for (int c = 0; c < basis.dim(); ++c) {
        const std::vector<Rational>& sv = basis.basis(c).svec();
        for (int r = 0; r < N; ++r) stack(r, c) = sv[r].get_d();
    }
    Eigen::VectorXd rhs(N);
    for (int idx = 0; idx < N; ++idx) {
        const auto [i, j] = SymMatrix::svec_entry(n, idx);
        rhs(idx) = x(i, j);
    }
    Eigen::VectorXd c = stack.colPivHouseholderQr().solve(rhs);
    // only the ray matters downstream; scaling by the largest coordinate
    // keeps the continued fractions on small-height rationals
    const double cmax = c.cwiseAbs().maxCoeff();
    if (cmax > 0) c /= cmax;
    std::vector<Rational> out(basis.dim());
    for (int i = 0; i < basis.dim(); ++i) out[i] = rationalize(c(i), denomBound);
    return out;
}

/// Snap a float matrix to an exact element of span(basis); returns matrices
/// in escalating-denominator order for the caller to verify.
inline std::vector<SymMatrix> rational_candidates(const Eigen::MatrixXd& x, const Subspace& basis,
                                                  const Options& opts) {
    std::vector<SymMatrix> out;
    for (unsigned long d = opts.denomBound; d <= opts.denomBoundMax; d *= 100) {
        out.push_back(basis.combine(float_coords(x, basis, d)));
        if (d > opts.denomBoundMax / 100) break;
    }
    return out;
}

/// {V in S^m : K V K^T in span(lc)} for an injective n x m map K, computed
/// as the orthogonal complement of the pulled-back complement of lc.
inline Subspace restrict_subspace(const Subspace& lc, const RatMatrix& kmap) {
    const int m = kmap.cols();
    std::vector<SymMatrix> pulled;
    const Subspace lcPerp = lc.orthogonal_complement();
    for (const SymMatrix& b : lcPerp.basis()) {
        const RatMatrix kb = kmap.transpose() * b.to_dense() * kmap;
        SymMatrix s(m);
        for (int i = 0; i < m; ++i)
            for (int j = i; j < m; ++j) s.at(i, j) = kb.at(i, j);
        pulled.push_back(s);
    }
    if (pulled.empty()) {
        // lc is all of S^n; the restriction is all of S^m
        std::vector<SymMatrix> full;
        for (size_t idx = 0; idx < SymMatrix::svec_size(m); ++idx) {
            std::vector<Rational> v(SymMatrix::svec_size(m));
            v[idx] = 1;
            full.push_back(SymMatrix::from_svec(m, v));
        }
        return Subspace(m, full);
    }
    return complement_of_span(m, pulled);
}

inline SymMatrix map_back(const SymMatrix& face, const RatMatrix& kmap) {
    const RatMatrix full = kmap * face.to_dense() * kmap.transpose();
    SymMatrix s(kmap.rows());
    for (int i = 0; i < kmap.rows(); ++i)
        for (int j = i; j < kmap.rows(); ++j) s.at(i, j) = full.at(i, j);
    return s;
}

}  // namespace detail

/// Facial-reduction loop. On every face both analytic centers are solved;
/// the L-side center rationalizes to lower-bound witnesses, the complement
/// center rationalizes to reducing certificates that cut the face. Exact
/// when the two meet; NumericOnly (never wrong-exact) when rationalization
/// or the numerics give out.
inline RankReport spectrahedral_rank(const Subspace& l, const Options& opts = Options()) {
    RankReport rep;
    const int n = l.n();
    RatMatrix kmap = RatMatrix::identity(n);
    Subspace lc = l;
    int witnessRank = -1;

    for (int round = 0; round <= n + 1; ++round) {
        const int m = lc.n();
        if (lc.dim() == 0) {
            if (witnessRank > 0)
                throw std::logic_error("spectrahedral_rank: witness survived to an empty face");
            rep.s = 0;
            rep.certified = Certified::Exact;
            return rep;
        }

        const sdp::AnalyticCenterResult center = sdp::analytic_center(lc, opts.sdpOptions);
        if (center.kind == sdp::AnalyticCenterResult::Kind::Point) {
            rep.numericEstimate = center.rank.rank;
            rep.rankUnstable = center.rank.unstable;
            for (const SymMatrix& cand : detail::rational_candidates(center.X, lc, opts)) {
                if (cand.is_zero()) continue;
                const PsdReport pr = psd_rank_exact(cand);
                if (pr.status == PsdStatus::Indefinite) continue;
                if (pr.rank > witnessRank) {
                    witnessRank = pr.rank;
                    rep.witness = detail::map_back(cand, kmap);
                }
                break;
            }
            if (witnessRank == m) {
                rep.s = m;
                rep.certified = Certified::Exact;
                return rep;
            }
        } else if (center.kind == sdp::AnalyticCenterResult::Kind::Certificate) {
            // a PD element of the complement: the face's spectrahedron is {0}
            std::vector<SymMatrix> cands;
            if (center.exactShortcut) {
                cands.push_back(SymMatrix::identity(m));
            } else {
                cands = detail::rational_candidates(center.certificate, lc.orthogonal_complement(),
                                                    opts);
            }
            for (const SymMatrix& cand : cands) {
                if (cand.is_zero()) continue;
                if (psd_rank_exact(cand).status != PsdStatus::PositiveDefinite) continue;
                if (witnessRank > 0)
                    throw std::logic_error("spectrahedral_rank: PD separator with nonzero witness");
                rep.chain.push_back(cand);
                rep.s = 0;
                rep.certified = Certified::Exact;
                return rep;
            }
            rep.note = "separating certificate failed exact verification";
        }

        // cut the face using the maximum-rank PSD element of the complement
        const Subspace perp = lc.orthogonal_complement();
        if (perp.dim() == 0) {
            // complement is zero: L covers S^m and contains I
            const SymMatrix eye = SymMatrix::identity(m);
            const PsdReport pr = psd_rank_exact(eye);
            (void)pr;
            rep.witness = detail::map_back(eye, kmap);
            rep.s = m;
            rep.certified = Certified::Exact;
            return rep;
        }
        const sdp::AnalyticCenterResult cperp = sdp::analytic_center(perp, opts.sdpOptions);
        bool cut = false;
        if (cperp.kind == sdp::AnalyticCenterResult::Kind::Point) {
            for (const SymMatrix& cand : detail::rational_candidates(cperp.X, perp, opts)) {
                if (cand.is_zero()) continue;
                const PsdReport pr = psd_rank_exact(cand);
                if (pr.status == PsdStatus::Indefinite || pr.rank == 0) continue;
                rep.chain.push_back(cand);
                const RatMatrix kprime = kernel_matrix(pr, m);
                lc = detail::restrict_subspace(lc, kprime);
                kmap = kmap * kprime;
                cut = true;
                break;
            }
        } else if (cperp.kind == sdp::AnalyticCenterResult::Kind::Certificate) {
            // PD element of lc itself: the face spectrahedron is full
            std::vector<SymMatrix> cands;
            if (cperp.exactShortcut)
                cands.push_back(SymMatrix::identity(m));
            else
                cands = detail::rational_candidates(cperp.certificate, lc, opts);
            for (const SymMatrix& cand : cands) {
                if (psd_rank_exact(cand).status != PsdStatus::PositiveDefinite) continue;
                if (!lc.contains(cand)) continue;
                rep.witness = detail::map_back(cand, kmap);
                rep.s = m;
                rep.certified = Certified::Exact;
                return rep;
            }
        }
        if (!cut) break;
    }

    rep.certified = Certified::NumericOnly;
    rep.s = rep.numericEstimate >= 0 ? static_cast<int>(rep.numericEstimate)
                                     : std::max(witnessRank, 0);
    if (rep.note.empty()) rep.note = "facial reduction stalled; numeric estimate only";
    return rep;
}

/// Block data of the Pataki theorem in the frame normalizing the maximal
/// rank witness q: L n I_L = {V in L : V22 = 0} and
/// L n I_L^2 = {V in L : V22 = 0 and V12 = 0}, dimensions by exact
/// nullspace. A witness v of strict inclusion certifies badness.
struct BlockData {
    Congruence frame;
    int dimI = 0, dimI2 = 0;
    std::optional<SymMatrix> v;  // in (L n I_L) \ (L n I_L^2)
    std::vector<std::vector<Rational>> ilGenerators;
};

inline BlockData lattice_dims(const Subspace& l, const RankReport& rank) {
    if (!rank.witness || rank.certified != Certified::Exact)
        throw std::invalid_argument("lattice_dims: exact rank witness required");
    BlockData bd;
    bd.frame = congruence_normalize(l, *rank.witness);
    const int n = l.n(), k = l.dim(), s = bd.frame.s;
    bd.ilGenerators = bd.frame.ilGenerators;

    // rows: conditions on coefficient vectors c with V(c) = sum c_i G^T A_i G
    std::vector<std::vector<Rational>> condI, condI2;
    for (int a = s; a < n; ++a)
        for (int b = a; b < n; ++b) {
            std::vector<Rational> row(k);
            for (int i = 0; i < k; ++i) row[i] = bd.frame.transformedBasis[i].at(a, b);
            condI.push_back(row);
        }
    condI2 = condI;
    for (int a = 0; a < s; ++a)
        for (int b = s; b < n; ++b) {
            std::vector<Rational> row(k);
            for (int i = 0; i < k; ++i) row[i] = bd.frame.transformedBasis[i].at(a, b);
            condI2.push_back(row);
        }
    auto asMatrix = [&](const std::vector<std::vector<Rational>>& rows) {
        RatMatrix m(static_cast<int>(rows.size()), k);
        for (size_t r = 0; r < rows.size(); ++r)
            for (int c = 0; c < k; ++c) m.at(static_cast<int>(r), c) = rows[r][c];
        return m;
    };
    const RatMatrix mI = asMatrix(condI), mI2 = asMatrix(condI2);
    const auto nullI = mI.nullspace();
    bd.dimI = static_cast<int>(nullI.size());
    bd.dimI2 = k - mI2.rank();

    if (bd.dimI > bd.dimI2) {
        // first kernel vector of the I-conditions violating the I^2-conditions
        for (const auto& c : nullI) {
            const auto extra = mI2.mul_vec(c);
            bool violates = false;
            for (const Rational& q : extra)
                if (q != 0) { violates = true; break; }
            if (violates) {
                SymMatrix v = l.combine(c);
                // canonical scaling
                std::vector<Rational> sv = primitive_vector(v.svec());
                bd.v = SymMatrix::from_svec(n, sv);
                // theorem conditions, exactly: V22 = 0 (hence PSD) and V12 != 0
                const SymMatrix vt = bd.v->congruence(bd.frame.g);
                bool v12 = false;
                for (int a = s; a < n; ++a)
                    for (int b = a; b < n; ++b)
                        if (vt.at(a, b) != 0)
                            throw std::logic_error("lattice_dims: witness has nonzero V22");
                for (int a = 0; a < s; ++a)
                    for (int b = s; b < n; ++b)
                        if (vt.at(a, b) != 0) v12 = true;
                if (!v12) throw std::logic_error("lattice_dims: witness has zero V12");
                break;
            }
        }
    }
    return bd;
}

/// All s with binom(n-s+1, 2) < k <= binom(n+1, 2) - binom(s+1, 2).
inline std::vector<int> pataki_range(int n, int k) {
    if (k < 1 || k > static_cast<int>(SymMatrix::svec_size(n)))
        throw std::invalid_argument("pataki_range: k out of range");
    std::vector<int> out;
    for (int s = 0; s <= n; ++s)
        if (binomial(n - s + 1, 2) < k && k <= binomial(n + 1, 2) - binomial(s + 1, 2))
            out.push_back(s);
    return out;
}

enum class Decision { Good, Bad, Undetermined };

struct GoodK1 {};
struct GoodZero {
    std::optional<SymMatrix> pdInComplement;  // PD element of L^perp
};
struct GoodFullRank {
    SymMatrix witness;  // PD element of L
};
struct GoodComplementary {
    SymMatrix q;  // rank s witness in L
    SymMatrix y;  // rank n-s witness in L^perp
    int dimI = 0, dimI2 = 0;
};
struct BadLatticeWitness {
    SymMatrix q;  // maximal rank witness
    SymMatrix v;  // element of (L n I_L) \ (L n I_L^2)
    int dimI = 0, dimI2 = 0;
    std::vector<std::vector<Rational>> ilGenerators;
};
struct BadRankGap {
    SymMatrix witnessX;  // rank s(L) >= 1
    std::optional<SymMatrix> witnessY;
    int sL = 0, sLperp = 0;
};
struct Undecided {
    std::string reason;
};

using Certificate = std::variant<GoodK1, GoodZero, GoodFullRank, GoodComplementary,
                                 BadLatticeWitness, BadRankGap, Undecided>;

struct Verdict {
    Decision decision = Decision::Undetermined;
    RankReport sL, sLperp;
    Certificate certificate = Undecided{};
    bool certifiedExact = false;
};

/// The decision tree of the badness criterion: k = 1 is always good; s = 0
/// and s = n are good; with both ranks certified, a rank gap s + s' < n is
/// bad, and at s + s' = n the lattice comparison decides. Anything short of
/// exact certificates is reported Undetermined, never guessed.
inline Verdict decide(const Subspace& l, const Options& opts = Options()) {
    Verdict v;
    const int n = l.n();

    v.sL = spectrahedral_rank(l, opts);
    const Subspace perp = l.orthogonal_complement();
    if (perp.dim() > 0)
        v.sLperp = spectrahedral_rank(perp, opts);
    else {
        v.sLperp.s = 0;
        v.sLperp.certified = Certified::Exact;
    }

    // cross-inference: a PD witness on one side pins the other side to zero
    auto pdWitness = [&](const RankReport& r) {
        return r.certified == Certified::Exact && r.s == n && r.witness;
    };
    if (pdWitness(v.sLperp) && v.sL.certified != Certified::Exact) {
        v.sL.s = 0;
        v.sL.certified = Certified::Exact;
        v.sL.witness.reset();
        v.sL.note = "pinned by a PD element of the complement";
    }
    if (pdWitness(v.sL) && v.sLperp.certified != Certified::Exact) {
        v.sLperp.s = 0;
        v.sLperp.certified = Certified::Exact;
        v.sLperp.witness.reset();
        v.sLperp.note = "pinned by a PD element of the primal side";
    }

    if (l.dim() == 1) {
        v.decision = Decision::Good;
        v.certificate = GoodK1{};
        v.certifiedExact = true;
        return v;
    }

    const bool exactL = v.sL.certified == Certified::Exact;
    const bool exactP = v.sLperp.certified == Certified::Exact;

    if (exactL && v.sL.s == 0) {
        v.decision = Decision::Good;
        GoodZero g;
        if (pdWitness(v.sLperp)) g.pdInComplement = v.sLperp.witness;
        v.certificate = std::move(g);
        v.certifiedExact = true;
        return v;
    }
    if (exactL && v.sL.s == n) {
        v.decision = Decision::Good;
        v.certificate = GoodFullRank{*v.sL.witness};
        v.certifiedExact = true;
        return v;
    }
    if (exactL && exactP) {
        if (v.sL.s + v.sLperp.s > n)
            throw std::logic_error("decide: certified ranks exceed n");
        if (v.sL.s + v.sLperp.s < n) {
            v.decision = Decision::Bad;
            BadRankGap cert;
            cert.witnessX = *v.sL.witness;
            if (v.sLperp.witness) cert.witnessY = v.sLperp.witness;
            cert.sL = v.sL.s;
            cert.sLperp = v.sLperp.s;
            v.certificate = std::move(cert);
            v.certifiedExact = true;
            return v;
        }
        // s(L) + s(L^perp) = n: the lattice comparison decides
        const BlockData bd = lattice_dims(l, v.sL);
        if (bd.v) {
            v.decision = Decision::Bad;
            BadLatticeWitness cert;
            cert.q = *v.sL.witness;
            cert.v = *bd.v;
            cert.dimI = bd.dimI;
            cert.dimI2 = bd.dimI2;
            cert.ilGenerators = bd.ilGenerators;
            v.certificate = std::move(cert);
            v.certifiedExact = true;
            return v;
        }
        v.decision = Decision::Good;
        GoodComplementary cert;
        cert.q = *v.sL.witness;
        cert.y = *v.sLperp.witness;
        cert.dimI = bd.dimI;
        cert.dimI2 = bd.dimI2;
        v.certificate = std::move(cert);
        v.certifiedExact = true;
        return v;
    }

    v.decision = Decision::Undetermined;
    v.certificate = Undecided{"rank certification incomplete: " + v.sL.note + " / " + v.sLperp.note};
    v.certifiedExact = false;
    return v;
}

}  // namespace badproj::pataki

#endif
