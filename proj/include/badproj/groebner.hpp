#ifndef BADPROJ_GROEBNER_HPP
#define BADPROJ_GROEBNER_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "badproj/poly.hpp"

namespace badproj::poly {

/// Resource budget for the symbolic pipelines. Exceeding it is an explicit,
/// distinguished outcome -- never a wrong answer.
struct Budget {
    size_t maxBasis = 20000;
    uint32_t maxDegree = 256;
    double seconds = std::numeric_limits<double>::infinity();
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::shared_ptr<std::atomic<bool>> cancel;

    static Budget unlimited() { return Budget{}; }
    static Budget with_seconds(double s) {
        Budget b;
        b.seconds = s;
        return b;
    }

    bool expired() const {
        if (cancel && cancel->load(std::memory_order_relaxed)) return true;
        if (seconds == std::numeric_limits<double>::infinity()) return false;
        const auto el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
        return el.count() > seconds;
    }
};

enum class GbStatus { Ok, Budget };

struct GbResult {
    GbStatus status = GbStatus::Ok;
    std::vector<Poly> basis;
    std::string note;
    bool ok() const { return status == GbStatus::Ok; }
    bool is_unit_ideal() const {
        return status == GbStatus::Ok && basis.size() == 1 && basis[0].is_nonzero_constant();
    }
};

/// When set, every Groebner basis computed in this process re-verifies
/// itself (all S-pairs and all input generators reduce to zero) before it is
/// returned. The acceptance suite switches this on globally.
inline std::atomic<bool>& gb_self_check_flag() {
    static std::atomic<bool> flag{false};
    return flag;
}

/// Remainder of multivariate division of f by the ordered list gs.
/// Deterministic: the first divisor in list order wins at every step.
inline Poly normal_form(Poly f, const std::vector<Poly>& gs) {
    if (f.is_zero() || gs.empty()) return f;
    const TermOrder ord = f.order();
    const RingPtr ring = f.ring();
    std::vector<Term> remainder;  // stays strictly descending
    while (!f.is_zero()) {
        const Monomial lm = f.leading_monomial();
        const Poly* divisor = nullptr;
        for (const Poly& g : gs) {
            if (!g.is_zero() && g.leading_monomial().divides(lm)) { divisor = &g; break; }
        }
        if (divisor) {
            const Rational c = -f.leading_coeff() / divisor->leading_coeff();
            f.add_scaled(*divisor, c, divisor->leading_monomial().quotient_of(lm));
        } else {
            remainder.push_back({lm, f.leading_coeff()});
            f.drop_leading();
        }
    }
    return Poly::from_sorted_terms(ring, ord, std::move(remainder));
}

inline Poly s_polynomial(const Poly& f, const Poly& g) {
    const Monomial l = Monomial::lcm(f.leading_monomial(), g.leading_monomial());
    Poly s = Poly::zero(f.ring(), f.order());
    s.add_scaled(f, 1 / f.leading_coeff(), f.leading_monomial().quotient_of(l));
    s.add_scaled(g, -1 / g.leading_coeff(), g.leading_monomial().quotient_of(l));
    return s;
}

namespace detail {

struct Pair {
    uint32_t lcmDeg;
    Monomial lcm;
    int i, j;  // i < j, indices into basis
};

struct PairLess {
    TermOrder ord;
    bool operator()(const Pair& a, const Pair& b) const {
        if (a.lcmDeg != b.lcmDeg) return a.lcmDeg < b.lcmDeg;
        const int c = ord.cmp(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
};

/// Gebauer-Moeller pair update on appending element t to the basis.
inline void update_pairs(std::vector<Pair>& pairs, const std::vector<Poly>& basis, int t,
                         const TermOrder& ord) {
    const Monomial& ltT = basis[t].leading_monomial();
    struct Cand {
        Monomial lcm;
        int i;
        bool alive = true;
    };
    std::vector<Cand> cand;
    cand.reserve(t);
    for (int i = 0; i < t; ++i)
        cand.push_back({Monomial::lcm(basis[i].leading_monomial(), ltT), i, true});

    // criterion M: drop (i,t) when some lcm(j,t) strictly divides lcm(i,t)
    for (size_t a = 0; a < cand.size(); ++a) {
        if (!cand[a].alive) continue;
        for (size_t b = 0; b < cand.size(); ++b) {
            if (a == b || !cand[b].alive) continue;
            if (cand[b].lcm.divides(cand[a].lcm) && cand[b].lcm != cand[a].lcm) {
                cand[a].alive = false;
                break;
            }
        }
    }
    // criterion F: among equal lcms keep the first
    for (size_t a = 0; a < cand.size(); ++a) {
        if (!cand[a].alive) continue;
        for (size_t b = a + 1; b < cand.size(); ++b) {
            if (!cand[b].alive) continue;
            if (cand[a].lcm == cand[b].lcm) cand[b].alive = false;
        }
    }
    // Buchberger's first criterion: coprime leading terms
    for (Cand& c : cand)
        if (c.alive && Monomial::coprime(basis[c.i].leading_monomial(), ltT)) c.alive = false;

    // prune old pairs via the new leading term (chain criterion)
    std::vector<Pair> kept;
    kept.reserve(pairs.size());
    for (Pair& p : pairs) {
        const bool drop = ltT.divides(p.lcm) &&
                          Monomial::lcm(basis[p.i].leading_monomial(), ltT) != p.lcm &&
                          Monomial::lcm(basis[p.j].leading_monomial(), ltT) != p.lcm;
        if (!drop) kept.push_back(std::move(p));
    }
    pairs = std::move(kept);
    for (Cand& c : cand)
        if (c.alive) pairs.push_back({c.lcm.deg, c.lcm, c.i, t});
    std::sort(pairs.begin(), pairs.end(), PairLess{ord});
}

}  // namespace detail

/// Buchberger with the normal selection strategy (minimal lcm degree),
/// Gebauer-Moeller pair pruning and exact rational arithmetic; each basis
/// element is kept primitive over Z with positive leading coefficient.
/// Output: the reduced Groebner basis, deterministic for identical inputs.
inline GbResult buchberger(const std::vector<Poly>& gens, TermOrder ord,
                           const Budget& budget = Budget::unlimited()) {
    GbResult res;
    if (gens.empty()) return res;
    const RingPtr ring = gens.front().ring();

    std::vector<Poly> basis;
    std::vector<detail::Pair> pairs;
    auto push = [&](Poly p) -> bool {  // returns false when the ideal is (1)
        p.make_primitive();
        if (p.is_zero()) return true;
        if (p.is_nonzero_constant()) return false;
        basis.push_back(std::move(p));
        detail::update_pairs(pairs, basis, static_cast<int>(basis.size()) - 1, ord);
        return true;
    };

    auto unitResult = [&]() {
        res.basis = {Poly::constant(ring, ord, 1)};
        return res;
    };

    for (const Poly& g : gens) {
        if (g.is_zero()) continue;
        Poly p = g.with_order(ord);
        if (!push(std::move(p))) return unitResult();
    }

    size_t steps = 0;
    while (!pairs.empty()) {
        if (((++steps) & 7u) == 0 && budget.expired()) {
            res.status = GbStatus::Budget;
            res.note = "budget exhausted during basis computation";
            return res;
        }
        if (basis.size() > budget.maxBasis) {
            res.status = GbStatus::Budget;
            res.note = "basis size cap exceeded";
            return res;
        }
        const detail::Pair pr = pairs.front();
        pairs.erase(pairs.begin());
        Poly s = s_polynomial(basis[pr.i], basis[pr.j]);
        Poly nf = normal_form(std::move(s), basis);
        if (nf.is_zero()) continue;
        if (nf.total_degree() > budget.maxDegree) {
            res.status = GbStatus::Budget;
            res.note = "degree cap exceeded";
            return res;
        }
        if (!push(std::move(nf))) return unitResult();
    }

    // minimalize: drop elements whose leading term is divisible by another's
    std::vector<Poly> minimal;
    for (size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            const Monomial& mi = basis[i].leading_monomial();
            const Monomial& mj = basis[j].leading_monomial();
            if (mj.divides(mi) && (mi != mj || j < i)) { redundant = true; break; }
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    // tail-reduce each element against the others -> reduced basis
    std::vector<Poly> reduced;
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Poly r = normal_form(minimal[i], others);
        r.make_primitive();
        if (!r.is_zero()) reduced.push_back(std::move(r));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Poly& a, const Poly& b) {
        return ord.less(a.leading_monomial(), b.leading_monomial());
    });
    res.basis = std::move(reduced);

    if (gb_self_check_flag().load(std::memory_order_relaxed) && res.basis.size() <= 200) {
        for (const Poly& g : gens)
            if (!normal_form(g.with_order(ord), res.basis).is_zero())
                throw std::logic_error("groebner self-check: input does not reduce to zero");
        for (size_t i = 0; i < res.basis.size(); ++i)
            for (size_t j = i + 1; j < res.basis.size(); ++j)
                if (!normal_form(s_polynomial(res.basis[i], res.basis[j]), res.basis).is_zero())
                    throw std::logic_error("groebner self-check: S-pair does not reduce to zero");
    }
    return res;
}

}  // namespace badproj::poly

#endif
