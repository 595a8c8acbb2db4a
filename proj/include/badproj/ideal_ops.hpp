#ifndef BADPROJ_IDEAL_OPS_HPP
#define BADPROJ_IDEAL_OPS_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "badproj/groebner.hpp"
#include "badproj/poly.hpp"

namespace badproj::poly {

struct Ideal {
    RingPtr ring;
    std::vector<Poly> gens;
};

inline GbResult groebner(const Ideal& i, TermOrder ord,
                         const Budget& budget = Budget::unlimited()) {
    if (i.gens.empty()) return GbResult{};
    return buchberger(i.gens, ord, budget);
}

struct IdealResult {
    GbStatus status = GbStatus::Ok;
    Ideal ideal;
    std::string note;
    bool ok() const { return status == GbStatus::Ok; }
};

namespace detail {

inline RingPtr extend_ring(const RingPtr& ring, const std::string& extra) {
    std::vector<std::string> vars = ring->vars;
    if (ring->index_of(extra) >= 0)
        throw std::invalid_argument("extend_ring: name collision on " + extra);
    vars.push_back(extra);
    return make_ring(std::move(vars));
}

inline std::vector<Poly> filter_without_vars(const std::vector<Poly>& gens,
                                             const std::vector<int>& vars) {
    std::vector<Poly> out;
    for (const Poly& g : gens) {
        bool uses = false;
        for (int v : vars)
            if (g.uses_var(v)) { uses = true; break; }
        if (!uses) out.push_back(g);
    }
    return out;
}

}  // namespace detail

/// Generators of I intersected with the subring on the non-dropped
/// variables, via a block elimination order.
inline IdealResult eliminate(const Ideal& i, const std::vector<int>& dropVars,
                             const Budget& budget = Budget::unlimited()) {
    IdealResult r;
    r.ideal.ring = i.ring;
    if (i.gens.empty()) return r;
    if (dropVars.empty()) {
        GbResult gb = groebner(i, TermOrder::degrevlex(), budget);
        r.status = gb.status;
        r.note = gb.note;
        r.ideal.gens = std::move(gb.basis);
        return r;
    }
    const TermOrder ord = TermOrder::block(dropVars);
    GbResult gb = groebner(i, ord, budget);
    if (!gb.ok()) {
        r.status = gb.status;
        r.note = gb.note;
        return r;
    }
    std::vector<Poly> kept = detail::filter_without_vars(gb.basis, dropVars);
    for (Poly& p : kept) p = p.with_order(TermOrder::degrevlex());
    r.ideal.gens = std::move(kept);
    return r;
}

/// I1 cap I2 through the classic one-parameter trick:
/// eliminate t from t*I1 + (1-t)*I2.
inline IdealResult intersect(const Ideal& i1, const Ideal& i2,
                             const Budget& budget = Budget::unlimited()) {
    IdealResult r;
    r.ideal.ring = i1.ring;
    if (i1.gens.empty() || i2.gens.empty()) return r;  // intersection with (0)
    const RingPtr ext = detail::extend_ring(i1.ring, "_t");
    const int tIdx = ext->nvars() - 1;
    const TermOrder ord = TermOrder::block({tIdx});
    const Poly t = Poly::variable(ext, ord, tIdx);
    const Poly oneMinusT = Poly::constant(ext, ord, 1) - t;
    std::vector<Poly> gens;
    for (const Poly& f : i1.gens) gens.push_back(t * map_to_ring(f, ext, ord));
    for (const Poly& g : i2.gens) gens.push_back(oneMinusT * map_to_ring(g, ext, ord));
    GbResult gb = buchberger(gens, ord, budget);
    if (!gb.ok()) {
        r.status = gb.status;
        r.note = gb.note;
        return r;
    }
    for (const Poly& p : detail::filter_without_vars(gb.basis, {tIdx}))
        r.ideal.gens.push_back(map_to_ring(p, i1.ring, TermOrder::degrevlex()));
    return r;
}

/// I : g^infinity by Rabinowitsch: eliminate w from I + <1 - w g>.
inline IdealResult saturate_one(const Ideal& i, const Poly& g,
                                const Budget& budget = Budget::unlimited()) {
    IdealResult r;
    r.ideal.ring = i.ring;
    const RingPtr ext = detail::extend_ring(i.ring, "_w");
    const int wIdx = ext->nvars() - 1;
    const TermOrder ord = TermOrder::block({wIdx});
    std::vector<Poly> gens;
    for (const Poly& f : i.gens) gens.push_back(map_to_ring(f, ext, ord));
    gens.push_back(Poly::constant(ext, ord, 1) -
                   Poly::variable(ext, ord, wIdx) * map_to_ring(g, ext, ord));
    GbResult gb = buchberger(gens, ord, budget);
    if (!gb.ok()) {
        r.status = gb.status;
        r.note = gb.note;
        return r;
    }
    for (const Poly& p : detail::filter_without_vars(gb.basis, {wIdx}))
        r.ideal.gens.push_back(map_to_ring(p, i.ring, TermOrder::degrevlex()));
    return r;
}

/// I : J^infinity = intersection over the generators g of J of I : g^infinity.
inline IdealResult saturate(const Ideal& i, const Ideal& j,
                            const Budget& budget = Budget::unlimited()) {
    IdealResult acc;
    acc.ideal.ring = i.ring;
    bool first = true;
    for (const Poly& g : j.gens) {
        if (g.is_zero()) continue;
        IdealResult s = saturate_one(i, g, budget);
        if (!s.ok()) return s;
        if (first) {
            acc = std::move(s);
            first = false;
        } else {
            acc = intersect(acc.ideal, s.ideal, budget);
            if (!acc.ok()) return acc;
        }
    }
    if (first) acc.ideal = i;  // J had no nonzero generators
    return acc;
}

/// Quotient-ring dimension probe on a reduced degrevlex basis of an affine
/// ideal. Zero-dimensionality is decided exactly (a pure power of every
/// active variable must appear among the leading terms); the count of
/// standard monomials equals the number of solutions with multiplicity.
struct DimProbe {
    enum class Kind { Empty, ZeroDim, PositiveDim };
    Kind kind = Kind::Empty;
    long count = 0;       // standard monomials, when ZeroDim
    int witnessVar = -1;  // a variable whose powers are all standard, when PositiveDim
};

inline DimProbe dimension_probe(const GbResult& gb, const std::vector<int>& activeVars,
                                long countCap = 1000000) {
    DimProbe probe;
    if (gb.is_unit_ideal()) return probe;
    std::vector<Monomial> lts;
    for (const Poly& g : gb.basis) lts.push_back(g.leading_monomial());

    std::vector<int> purePow(activeVars.size(), -1);
    for (size_t a = 0; a < activeVars.size(); ++a) {
        const int v = activeVars[a];
        for (const Monomial& m : lts) {
            if (m.e[v] == 0) continue;
            bool pure = m.deg == m.e[v];
            if (pure) {
                if (purePow[a] < 0 || m.e[v] < purePow[a]) purePow[a] = m.e[v];
            }
        }
        if (purePow[a] < 0) {
            probe.kind = DimProbe::Kind::PositiveDim;
            probe.witnessVar = v;
            return probe;
        }
    }
    // enumerate standard monomials inside the pure-power exponent box
    probe.kind = DimProbe::Kind::ZeroDim;
    const int nv = lts.empty() ? 0 : lts.front().nv;
    Monomial cur = Monomial::one(nv);
    long count = 0;
    auto divisible = [&](const Monomial& m) {
        for (const Monomial& lt : lts)
            if (lt.divides(m)) return true;
        return false;
    };
    auto rec = [&](auto&& self, size_t pos) -> void {
        if (count > countCap) return;
        if (pos == activeVars.size()) {
            if (!divisible(cur)) ++count;
            return;
        }
        const int v = activeVars[pos];
        for (int ex = 0; ex < purePow[pos]; ++ex) {
            cur.e[v] = static_cast<uint16_t>(ex);
            cur.deg += (ex > 0) ? 1 : 0;
            self(self, pos + 1);
        }
        cur.deg -= cur.e[v];
        cur.e[v] = 0;
    };
    rec(rec, 0);
    probe.count = std::min(count, countCap);
    return probe;
}

}  // namespace badproj::poly

#endif
