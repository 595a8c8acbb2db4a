#ifndef BADPROJ_MONOMIAL_HPP
#define BADPROJ_MONOMIAL_HPP

#include <array>
#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

namespace badproj::poly {

inline constexpr int kMaxVars = 24;

/// Exponent vector over a fixed ordered variable list. Inline storage keeps
/// monomial arithmetic allocation-free in the Buchberger inner loops.
struct Monomial {
    std::array<uint16_t, kMaxVars> e{};
    int16_t nv = 0;
    uint32_t deg = 0;

    static Monomial one(int nvars) {
        Monomial m;
        m.nv = static_cast<int16_t>(nvars);
        return m;
    }
    static Monomial var(int nvars, int i, int pow = 1) {
        Monomial m = one(nvars);
        m.e[i] = static_cast<uint16_t>(pow);
        m.deg = static_cast<uint32_t>(pow);
        return m;
    }

    bool is_one() const { return deg == 0; }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        assert(a.nv == b.nv);
        Monomial m = a;
        for (int i = 0; i < a.nv; ++i) m.e[i] = static_cast<uint16_t>(m.e[i] + b.e[i]);
        m.deg = a.deg + b.deg;
        return m;
    }

    bool divides(const Monomial& m) const {
        if (deg > m.deg) return false;
        for (int i = 0; i < nv; ++i)
            if (e[i] > m.e[i]) return false;
        return true;
    }

    /// m / *this, assuming divisibility.
    Monomial quotient_of(const Monomial& m) const {
        Monomial q = m;
        for (int i = 0; i < nv; ++i) q.e[i] = static_cast<uint16_t>(m.e[i] - e[i]);
        q.deg = m.deg - deg;
        return q;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial m = a;
        for (int i = 0; i < a.nv; ++i) {
            m.e[i] = a.e[i] > b.e[i] ? a.e[i] : b.e[i];
        }
        m.deg = 0;
        for (int i = 0; i < a.nv; ++i) m.deg += m.e[i];
        return m;
    }

    static bool coprime(const Monomial& a, const Monomial& b) {
        for (int i = 0; i < a.nv; ++i)
            if (a.e[i] != 0 && b.e[i] != 0) return false;
        return true;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        if (a.nv != b.nv || a.deg != b.deg) return false;
        for (int i = 0; i < a.nv; ++i)
            if (a.e[i] != b.e[i]) return false;
        return true;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
};

/// Term orders: lex, degrevlex, and a two-block elimination order (degrevlex
/// within each block, first block dominates) used by eliminate/saturate.
struct TermOrder {
    enum class Kind : uint8_t { Lex, DegRevLex, Block };
    Kind kind = Kind::DegRevLex;
    uint32_t blockMask = 0;  // bit i set: variable i belongs to the eliminated block

    static TermOrder lex() { return TermOrder{Kind::Lex, 0}; }
    static TermOrder degrevlex() { return TermOrder{Kind::DegRevLex, 0}; }
    static TermOrder block(const std::vector<int>& firstBlockVars) {
        TermOrder t{Kind::Block, 0};
        for (int v : firstBlockVars) t.blockMask |= (1u << v);
        return t;
    }

    bool in_block(int i) const { return (blockMask >> i) & 1u; }

    /// negative: a < b, zero: equal, positive: a > b
    int cmp(const Monomial& a, const Monomial& b) const {
        switch (kind) {
            case Kind::Lex: {
                for (int i = 0; i < a.nv; ++i)
                    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
                return 0;
            }
            case Kind::DegRevLex:
                return cmp_grevlex_masked(a, b, ~0u);
            case Kind::Block: {
                const int c1 = cmp_grevlex_masked(a, b, blockMask);
                if (c1 != 0) return c1;
                return cmp_grevlex_masked(a, b, ~blockMask);
            }
        }
        return 0;
    }

    bool less(const Monomial& a, const Monomial& b) const { return cmp(a, b) < 0; }
    bool greater(const Monomial& a, const Monomial& b) const { return cmp(a, b) > 0; }

    friend bool operator==(const TermOrder& x, const TermOrder& y) {
        return x.kind == y.kind && x.blockMask == y.blockMask;
    }

private:
    static int cmp_grevlex_masked(const Monomial& a, const Monomial& b, uint32_t mask) {
        uint32_t da = 0, db = 0;
        for (int i = 0; i < a.nv; ++i)
            if ((mask >> i) & 1u) { da += a.e[i]; db += b.e[i]; }
        if (da != db) return da < db ? -1 : 1;
        for (int i = a.nv - 1; i >= 0; --i) {
            if (!((mask >> i) & 1u)) continue;
            if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
        }
        return 0;
    }
};

}  // namespace badproj::poly

#endif
