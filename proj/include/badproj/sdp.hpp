#ifndef BADPROJ_SDP_HPP
#define BADPROJ_SDP_HPP

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "badproj/subspace.hpp"

namespace badproj::sdp {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// min <C,X> s.t. <A_i,X> = b_i, X psd. All data dense floats.
struct SdpProblem {
    int n = 0;
    MatrixXd C;
    std::vector<MatrixXd> A;
    VectorXd b;
};

enum class SdpStatus { Optimal, Infeasible, DualInfeasible, MaxIter, NumericalFailure };

struct SdpSolution {
    SdpStatus status = SdpStatus::MaxIter;
    MatrixXd X, Z;
    VectorXd y;  // multipliers for the original constraint list (dropped rows get 0)
    double mu = 0, primalRes = 0, dualRes = 0, gap = 0;
    int iterations = 0;
    std::string note;
};

struct SdpOptions {
    double gapTol = 1e-8;
    double feasTol = 1e-9;
    int maxIter = 300;
    double stepFraction = 0.95;
    double rankRelTol = 1e-6;
};

struct RankEstimate {
    int rank = 0;
    std::vector<double> eigenvalues;  // ascending
    double threshold = 0;
    bool unstable = false;  // an eigenvalue fell inside [0.1*thr, 10*thr]
};

inline RankEstimate estimate_rank(const MatrixXd& x, double relTol = 1e-6) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(x);
    RankEstimate r;
    const VectorXd ev = es.eigenvalues();
    const double lmax = ev.size() ? ev(ev.size() - 1) : 0.0;
    r.threshold = relTol * std::max(1.0, lmax);
    for (int i = 0; i < ev.size(); ++i) {
        r.eigenvalues.push_back(ev(i));
        if (ev(i) > r.threshold) ++r.rank;
        const double a = std::abs(ev(i));
        if (a >= 0.1 * r.threshold && a <= 10 * r.threshold) r.unstable = true;
    }
    return r;
}

namespace detail {

inline double min_eig(const MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
    return es.eigenvalues()(0);
}

/// Largest alpha with X + alpha*D psd (X positive definite).
inline double max_step(const MatrixXd& x, const MatrixXd& d) {
    Eigen::LLT<MatrixXd> llt(x);
    if (llt.info() != Eigen::Success) return 0.0;
    const MatrixXd l = llt.matrixL();
    const MatrixXd s = l.triangularView<Eigen::Lower>().solve(
        l.triangularView<Eigen::Lower>().solve(d).transpose()).transpose();
    const double lmin = min_eig(0.5 * (s + s.transpose()));
    if (lmin >= 0) return 1e30;
    return -1.0 / lmin;
}

inline MatrixXd sym_sqrt(const MatrixXd& m, bool inverse) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
    VectorXd d = es.eigenvalues();
    for (int i = 0; i < d.size(); ++i) {
        const double v = std::max(d(i), 1e-300);
        d(i) = inverse ? 1.0 / std::sqrt(v) : std::sqrt(v);
    }
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace detail

/// Primal-dual path following with Nesterov-Todd scaling and a two-solve
/// predictor-corrector step, infeasible start at (I, 0, I). Deterministic
/// for identical inputs and options.
inline SdpSolution solve(const SdpProblem& problem, const SdpOptions& opts = SdpOptions()) {
    SdpSolution sol;
    const int n = problem.n;
    const int mAll = static_cast<int>(problem.A.size());

    // presolve: drop dependent constraints, detecting linear inconsistency
    std::vector<int> keep;
    {
        const int nn = n * n;
        MatrixXd rows(mAll, nn);
        for (int i = 0; i < mAll; ++i)
            rows.row(i) = Eigen::Map<const VectorXd>(problem.A[i].data(), nn).transpose();
        MatrixXd kept(0, nn);
        for (int i = 0; i < mAll; ++i) {
            MatrixXd trial(kept.rows() + 1, nn);
            if (kept.rows() > 0) trial.topRows(kept.rows()) = kept;
            trial.row(trial.rows() - 1) = rows.row(i);
            Eigen::ColPivHouseholderQR<MatrixXd> qr(trial.transpose());
            qr.setThreshold(1e-11);
            if (qr.rank() == trial.rows()) {
                kept = trial;
                keep.push_back(i);
            } else {
                // dependent row: check right-hand side consistency
                Eigen::ColPivHouseholderQR<MatrixXd> qr2(kept.transpose());
                const VectorXd coef = qr2.solve(rows.row(i).transpose());
                double want = 0;
                for (size_t k = 0; k < keep.size(); ++k) want += coef(static_cast<int>(k)) * problem.b(keep[k]);
                const double scale = std::max(1.0, problem.b.cwiseAbs().maxCoeff());
                if (std::abs(want - problem.b(i)) > 1e-8 * scale) {
                    sol.status = SdpStatus::Infeasible;
                    sol.note = "inconsistent linear constraints";
                    sol.y = VectorXd::Zero(mAll);
                    sol.X = MatrixXd::Zero(n, n);
                    sol.Z = MatrixXd::Zero(n, n);
                    return sol;
                }
            }
        }
    }
    const int m = static_cast<int>(keep.size());
    std::vector<MatrixXd> A(m);
    VectorXd b(m);
    VectorXd rowScale(m);
    for (int i = 0; i < m; ++i) {
        const double s = std::max(problem.A[keep[i]].norm(), 1e-12);
        rowScale(i) = s;
        A[i] = problem.A[keep[i]] / s;
        b(i) = problem.b(keep[i]) / s;
    }

    MatrixXd X = MatrixXd::Identity(n, n);
    MatrixXd Z = MatrixXd::Identity(n, n);
    VectorXd y = VectorXd::Zero(m);

    auto applyA = [&](const MatrixXd& M) {
        VectorXd out(m);
        for (int i = 0; i < m; ++i) out(i) = (A[i].array() * M.array()).sum();
        return out;
    };
    auto applyAT = [&](const VectorXd& v) {
        MatrixXd out = MatrixXd::Zero(n, n);
        for (int i = 0; i < m; ++i) out += v(i) * A[i];
        return out;
    };

    const double bScale = 1.0 + (m ? b.cwiseAbs().maxCoeff() : 0.0);
    const double cScale = 1.0 + problem.C.norm();

    double bestRp = std::numeric_limits<double>::infinity();
    int stagnant = 0;

    for (int iter = 0; iter < opts.maxIter; ++iter) {
        const VectorXd rp = b - applyA(X);
        const MatrixXd Rd = problem.C - Z - applyAT(y);
        const double gap = (X.array() * Z.array()).sum();
        const double mu = gap / n;
        sol.iterations = iter;
        sol.mu = mu;
        sol.primalRes = rp.size() ? rp.cwiseAbs().maxCoeff() : 0.0;
        sol.dualRes = Rd.norm();
        sol.gap = std::abs(gap);

        if (sol.primalRes <= opts.feasTol * bScale && sol.dualRes <= opts.feasTol * cScale &&
            sol.gap <= opts.gapTol) {
            sol.status = SdpStatus::Optimal;
            break;
        }
        if (y.size() && y.cwiseAbs().maxCoeff() > 1e9) {
            sol.status = SdpStatus::Infeasible;
            sol.note = "dual variables diverged";
            break;
        }
        // residual floor: without strict primal feasibility the constraint
        // residual bottoms out; stop once the gap is closed and the residual
        // has stopped improving
        if (sol.primalRes < 0.9 * bestRp) {
            bestRp = sol.primalRes;
            stagnant = 0;
        } else if (++stagnant > 8 && sol.gap <= opts.gapTol) {
            sol.status = SdpStatus::MaxIter;
            sol.note = "primal residual floor reached";
            break;
        }

        // NT scaling W = X^{1/2} (X^{1/2} Z X^{1/2})^{-1/2} X^{1/2}
        const MatrixXd Xh = detail::sym_sqrt(X, false);
        const MatrixXd T = Xh * Z * Xh;
        const MatrixXd Tmh = detail::sym_sqrt(0.5 * (T + T.transpose()), true);
        MatrixXd W = Xh * Tmh * Xh;
        W = 0.5 * (W + W.transpose());

        MatrixXd M(m, m);
        std::vector<MatrixXd> WAW(m);
        for (int j = 0; j < m; ++j) WAW[j] = W * A[j] * W;
        for (int i = 0; i < m; ++i)
            for (int j = i; j < m; ++j) {
                M(i, j) = (A[i].array() * WAW[j].array()).sum();
                M(j, i) = M(i, j);
            }
        Eigen::LDLT<MatrixXd> mf(M + 1e-14 * MatrixXd::Identity(m, m));
        if (mf.info() != Eigen::Success) {
            sol.status = SdpStatus::NumericalFailure;
            sol.note = "Newton system factorization failed";
            break;
        }

        const MatrixXd Zi = Z.llt().solve(MatrixXd::Identity(n, n));
        auto direction = [&](double nu, MatrixXd& dX, VectorXd& dy, MatrixXd& dZ) {
            const MatrixXd Rc = nu * Zi - X;
            const MatrixXd WRdW = W * Rd * W;
            const VectorXd rhs = rp - applyA(Rc) + applyA(WRdW);
            dy = mf.solve(rhs);
            dZ = Rd - applyAT(dy);
            dX = Rc - W * dZ * W;
            dX = 0.5 * (dX + dX.transpose());
        };

        // predictor
        MatrixXd dXa, dZa;
        VectorXd dya;
        direction(0.0, dXa, dya, dZa);
        const double apMax = detail::max_step(X, dXa);
        const double adMax = detail::max_step(Z, dZa);
        const double ap = std::min(1.0, opts.stepFraction * apMax);
        const double ad = std::min(1.0, opts.stepFraction * adMax);
        const double gapAff =
            ((X + ap * dXa).array() * (Z + ad * dZa).array()).sum();
        double sigma = std::pow(std::max(gapAff, 0.0) / std::max(gap, 1e-300), 3.0);
        sigma = std::min(0.8, std::max(1e-6, sigma));

        // corrector / combined step
        MatrixXd dX, dZ;
        VectorXd dy;
        direction(sigma * mu, dX, dy, dZ);
        const double ap2 = std::min(1.0, opts.stepFraction * detail::max_step(X, dX));
        const double ad2 = std::min(1.0, opts.stepFraction * detail::max_step(Z, dZ));
        X += ap2 * dX;
        Z += ad2 * dZ;
        y += ad2 * dy;
        X = 0.5 * (X + X.transpose());
        Z = 0.5 * (Z + Z.transpose());

        if (iter + 1 == opts.maxIter) sol.status = SdpStatus::MaxIter;
    }

    sol.X = X;
    sol.Z = Z;
    sol.y = VectorXd::Zero(mAll);
    for (int i = 0; i < m; ++i) sol.y(keep[i]) = y(i) / rowScale(i);
    return sol;
}

inline MatrixXd to_float(const SymMatrix& a) {
    MatrixXd m(a.n(), a.n());
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) m(i, j) = a.at(i, j).get_d();
    return m;
}

/// Analytic center of {X in L : trace X = 1, X psd} by path following with
/// zero objective; the numeric rank of the center estimates s(L). When the
/// slice is infeasible the complement side yields a separating certificate:
/// a positive definite Y in the complement of L.
struct AnalyticCenterResult {
    enum class Kind { Point, Certificate, Failure };
    Kind kind = Kind::Failure;
    MatrixXd X;              // the center, when kind == Point
    RankEstimate rank;       // of X
    MatrixXd certificate;    // PD element of the complement, when Certificate
    std::string note;
    bool exactShortcut = false;  // certificate known exactly (identity matrix)
};

inline SdpProblem feasibility_problem(const Subspace& l) {
    // constraints: X orthogonal to a basis of the complement, trace X = 1
    SdpProblem p;
    p.n = l.n();
    p.C = MatrixXd::Zero(p.n, p.n);
    const Subspace perp = l.orthogonal_complement();
    for (const SymMatrix& bmat : perp.basis()) p.A.push_back(to_float(bmat));
    p.A.push_back(MatrixXd::Identity(p.n, p.n));
    p.b = VectorXd::Zero(static_cast<int>(p.A.size()));
    p.b(static_cast<int>(p.A.size()) - 1) = 1.0;
    return p;
}

inline AnalyticCenterResult analytic_center(const Subspace& l, const SdpOptions& opts = SdpOptions()) {
    AnalyticCenterResult res;
    if (l.dim() == 0) {
        res.kind = AnalyticCenterResult::Kind::Certificate;
        res.certificate = MatrixXd::Identity(l.n(), l.n());
        res.exactShortcut = true;
        res.note = "zero subspace; identity separates";
        return res;
    }
    // exact shortcut: if every basis matrix is trace-free then the slice
    // {trace = 1} misses L entirely and I itself lies in the complement
    bool allTraceFree = true;
    for (const SymMatrix& a : l.basis())
        if (a.trace() != 0) { allTraceFree = false; break; }
    if (allTraceFree) {
        res.kind = AnalyticCenterResult::Kind::Certificate;
        res.certificate = MatrixXd::Identity(l.n(), l.n());
        res.exactShortcut = true;
        res.note = "trace vanishes on L; identity is a PD element of the complement";
        return res;
    }

    SdpOptions o = opts;
    o.gapTol = std::min(opts.gapTol, 1e-12);
    // acceptable degenerate convergence: gap closed, near-feasible, near-psd
    auto usable = [&](const SdpSolution& s) {
        if (s.status == SdpStatus::Optimal) return true;
        if (s.status != SdpStatus::MaxIter) return false;
        return s.gap <= 1e-8 && s.primalRes <= 1e-6 && detail::min_eig(s.X) >= -1e-8;
    };
    const SdpSolution s = solve(feasibility_problem(l), o);
    if (usable(s)) {
        res.kind = AnalyticCenterResult::Kind::Point;
        res.X = s.X;
        res.rank = estimate_rank(s.X, opts.rankRelTol);
        if (s.status != SdpStatus::Optimal)
            res.note = "degenerate convergence; constraint residual " + std::to_string(s.primalRes);
        return res;
    }
    // try the complement side for a positive definite separator
    const Subspace perp = l.orthogonal_complement();
    if (perp.dim() > 0) {
        const SdpSolution sc = solve(feasibility_problem(perp), o);
        if (usable(sc)) {
            const RankEstimate r = estimate_rank(sc.X, opts.rankRelTol);
            if (r.rank == l.n() && !r.unstable) {
                res.kind = AnalyticCenterResult::Kind::Certificate;
                res.certificate = sc.X;
                res.note = "complement center is positive definite";
                return res;
            }
        }
    }
    res.kind = AnalyticCenterResult::Kind::Failure;
    res.note = "interior point iteration did not converge: " + s.note;
    return res;
}

/// Numeric complementary pair: analytic centers of both sides (zero when a
/// side has no nonzero PSD element), with ranks and the product residual.
struct ComplementaryPair {
    MatrixXd X, Y;
    RankEstimate rankX, rankY;
    double productInf = 0;  // max-norm of X*Y, expected ~ 0
    bool xZero = false, yZero = false;
};

inline ComplementaryPair complementary_pair(const Subspace& l, const SdpOptions& opts = SdpOptions()) {
    ComplementaryPair pair;
    const int n = l.n();
    const AnalyticCenterResult cx = analytic_center(l, opts);
    if (cx.kind == AnalyticCenterResult::Kind::Point) {
        pair.X = cx.X;
        pair.rankX = cx.rank;
    } else {
        pair.X = MatrixXd::Zero(n, n);
        pair.xZero = true;
    }
    const AnalyticCenterResult cy = analytic_center(l.orthogonal_complement(), opts);
    if (cy.kind == AnalyticCenterResult::Kind::Point) {
        pair.Y = cy.X;
        pair.rankY = cy.rank;
    } else {
        pair.Y = MatrixXd::Zero(n, n);
        pair.yZero = true;
    }
    pair.productInf = (pair.X * pair.Y).cwiseAbs().maxCoeff();
    return pair;
}

}  // namespace badproj::sdp

#endif
