#ifndef BADPROJ_POLY_HPP
#define BADPROJ_POLY_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "badproj/monomial.hpp"
#include "badproj/rational.hpp"

namespace badproj::poly {

struct Ring {
    std::vector<std::string> vars;

    explicit Ring(std::vector<std::string> v) : vars(std::move(v)) {
        if (static_cast<int>(vars.size()) > kMaxVars)
            throw std::invalid_argument("Ring: too many variables");
    }
    int nvars() const { return static_cast<int>(vars.size()); }
    int index_of(const std::string& name) const {
        for (int i = 0; i < nvars(); ++i)
            if (vars[i] == name) return i;
        return -1;
    }
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> vars) {
    return std::make_shared<const Ring>(std::move(vars));
}

struct Term {
    Monomial m;
    Rational c;
};

/// Multivariate polynomial over Q. Terms are kept sorted in strictly
/// descending order of the attached term order, with no zero coefficients;
/// this canonical form is unique for a fixed variable order.
class Poly {
public:
    Poly() = default;
    Poly(RingPtr ring, TermOrder ord) : ring_(std::move(ring)), ord_(ord) {}

    static Poly zero(RingPtr ring, TermOrder ord) { return Poly(std::move(ring), ord); }
    static Poly constant(RingPtr ring, TermOrder ord, const Rational& c) {
        Poly p(std::move(ring), ord);
        if (c != 0) p.t_.push_back({Monomial::one(p.ring_->nvars()), c});
        return p;
    }
    static Poly variable(RingPtr ring, TermOrder ord, int i, int pow = 1) {
        Poly p(ring, ord);
        if (i < 0 || i >= ring->nvars()) throw std::invalid_argument("Poly: bad variable index");
        p.t_.push_back({Monomial::var(ring->nvars(), i, pow), Rational(1)});
        return p;
    }
    static Poly term(RingPtr ring, TermOrder ord, const Monomial& m, const Rational& c) {
        Poly p(std::move(ring), ord);
        if (c != 0) p.t_.push_back({m, c});
        return p;
    }

    const RingPtr& ring() const { return ring_; }
    const TermOrder& order() const { return ord_; }
    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }

    const Monomial& leading_monomial() const { return t_.front().m; }
    const Rational& leading_coeff() const { return t_.front().c; }

    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
    bool is_nonzero_constant() const { return t_.size() == 1 && t_[0].m.is_one(); }

    uint32_t total_degree() const {
        uint32_t d = 0;
        for (const Term& t : t_) d = std::max(d, t.m.deg);
        return d;
    }

    int degree_in(int var) const {
        int d = -1;
        for (const Term& t : t_) d = std::max(d, static_cast<int>(t.m.e[var]));
        return d;
    }

    bool uses_var(int var) const {
        for (const Term& t : t_)
            if (t.m.e[var] != 0) return true;
        return false;
    }

    Poly with_order(TermOrder ord) const {
        if (ord == ord_) return *this;
        Poly p(ring_, ord);
        p.t_ = t_;
        std::sort(p.t_.begin(), p.t_.end(),
                  [&](const Term& a, const Term& b) { return ord.greater(a.m, b.m); });
        return p;
    }

    friend Poly operator-(const Poly& a) {
        Poly p = a;
        for (Term& t : p.t_) t.c = -t.c;
        return p;
    }

    friend Poly operator+(const Poly& a, const Poly& b) { return merged(a, b, 1); }
    friend Poly operator-(const Poly& a, const Poly& b) { return merged(a, b, -1); }

    friend Poly operator*(const Rational& c, const Poly& a) {
        Poly p = a;
        if (c == 0) { p.t_.clear(); return p; }
        for (Term& t : p.t_) t.c *= c;
        return p;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        check(a, b);
        Poly acc = Poly::zero(a.ring_, a.ord_);
        if (a.is_zero() || b.is_zero()) return acc;
        // repeated merged adds; fine at the sizes the pipelines produce
        const Poly* small = &a;
        const Poly* big = &b;
        if (small->t_.size() > big->t_.size()) std::swap(small, big);
        for (const Term& t : small->t_) acc.add_scaled(*big, t.c, t.m);
        return acc;
    }

    Poly pow(int e) const {
        if (e < 0) throw std::invalid_argument("Poly::pow: negative exponent");
        Poly r = Poly::constant(ring_, ord_, 1);
        Poly base = *this;
        while (e > 0) {
            if (e & 1) r = r * base;
            base = (e >>= 1) ? base * base : base;
        }
        return r;
    }

    void drop_leading() { t_.erase(t_.begin()); }

    /// Assemble from terms already strictly descending under ord.
    static Poly from_sorted_terms(RingPtr ring, TermOrder ord, std::vector<Term> terms) {
        Poly p(std::move(ring), ord);
        p.t_ = std::move(terms);
        return p;
    }

    /// *this += c * m * g. The merge at the heart of division and S-polys.
    void add_scaled(const Poly& g, const Rational& c, const Monomial& m) {
        if (c == 0 || g.is_zero()) return;
        std::vector<Term> out;
        out.reserve(t_.size() + g.t_.size());
        size_t i = 0, j = 0;
        while (i < t_.size() && j < g.t_.size()) {
            const Monomial gm = g.t_[j].m * m;
            const int cc = ord_.cmp(t_[i].m, gm);
            if (cc > 0) {
                out.push_back(std::move(t_[i]));
                ++i;
            } else if (cc < 0) {
                out.push_back({gm, c * g.t_[j].c});
                ++j;
            } else {
                Rational s = t_[i].c + c * g.t_[j].c;
                if (s != 0) out.push_back({t_[i].m, std::move(s)});
                ++i;
                ++j;
            }
        }
        for (; i < t_.size(); ++i) out.push_back(std::move(t_[i]));
        for (; j < g.t_.size(); ++j) out.push_back({g.t_[j].m * m, c * g.t_[j].c});
        t_ = std::move(out);
    }

    /// Divide by the content and make the leading coefficient positive:
    /// the canonical primitive integer representative of the scalar class.
    void make_primitive() {
        if (t_.empty()) return;
        Integer den = 1, num = 0;
        for (const Term& t : t_) den = lcm(den, t.c.get_den());
        for (const Term& t : t_) {
            Integer n = abs(t.c.get_num() * (den / t.c.get_den()));
            num = (num == 0) ? n : gcd(num, n);
        }
        Rational scale(den, num);
        scale.canonicalize();
        if (t_.front().c < 0) scale = -scale;
        if (scale != 1)
            for (Term& t : t_) t.c *= scale;
    }

    /// Exact substitution of variables by polynomials (or constants). Keys
    /// are variable indices; untouched variables persist.
    Poly substitute(const std::map<int, Poly>& bindings) const {
        Poly acc = Poly::zero(ring_, ord_);
        for (const Term& t : t_) {
            Poly factor = Poly::constant(ring_, ord_, t.c);
            Monomial residual = Monomial::one(ring_->nvars());
            for (int v = 0; v < ring_->nvars(); ++v) {
                if (t.m.e[v] == 0) continue;
                const auto it = bindings.find(v);
                if (it == bindings.end()) {
                    residual.e[v] = t.m.e[v];
                    residual.deg += t.m.e[v];
                } else {
                    factor = factor * it->second.pow(t.m.e[v]);
                }
            }
            acc.add_scaled(factor, Rational(1), residual);
        }
        return acc;
    }

    Poly substitute(int var, const Rational& value) const {
        std::map<int, Poly> b;
        b.emplace(var, Poly::constant(ring_, ord_, value));
        return substitute(b);
    }

    /// Constant term value of a constant polynomial.
    Rational constant_value() const {
        if (t_.empty()) return 0;
        if (!is_constant()) throw std::logic_error("constant_value on non-constant poly");
        return t_[0].c;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.t_.size() != b.t_.size()) return false;
        for (size_t i = 0; i < a.t_.size(); ++i)
            if (a.t_[i].c != b.t_[i].c || a.t_[i].m != b.t_[i].m) return false;
        return true;
    }

    std::string str() const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const Term& t : t_) {
            Rational c = t.c;
            if (first) {
                if (c < 0) { os << "-"; c = -c; }
            } else {
                os << (c < 0 ? "-" : "+");
                if (c < 0) c = -c;
            }
            first = false;
            const bool unitCoeff = (c == 1) && !t.m.is_one();
            if (!unitCoeff) os << to_string(c);
            bool needStar = !unitCoeff;
            for (int v = 0; v < ring_->nvars(); ++v) {
                if (t.m.e[v] == 0) continue;
                if (needStar) os << "*";
                os << ring_->vars[v];
                if (t.m.e[v] > 1) os << "^" << t.m.e[v];
                needStar = true;
            }
        }
        return os.str();
    }

private:
    static void check(const Poly& a, const Poly& b) {
        if (a.ring_ != b.ring_ || !(a.ord_ == b.ord_))
            throw std::invalid_argument("Poly: mixed rings or term orders");
    }

    static Poly merged(const Poly& a, const Poly& b, int sgn) {
        check(a, b);
        Poly p = a;
        p.add_scaled(b, Rational(sgn), Monomial::one(a.ring_ ? a.ring_->nvars() : 0));
        return p;
    }

    RingPtr ring_;
    TermOrder ord_{};
    std::vector<Term> t_;
};

/// Map a polynomial into another ring by matching variable names; every used
/// variable must exist in the target ring.
inline Poly map_to_ring(const Poly& f, const RingPtr& target, TermOrder ord) {
    std::vector<int> lut(f.ring()->nvars(), -1);
    for (int v = 0; v < f.ring()->nvars(); ++v) lut[v] = target->index_of(f.ring()->vars[v]);
    Poly out = Poly::zero(target, ord);
    for (const Term& t : f.terms()) {
        Monomial m = Monomial::one(target->nvars());
        for (int v = 0; v < f.ring()->nvars(); ++v) {
            if (t.m.e[v] == 0) continue;
            if (lut[v] < 0)
                throw std::invalid_argument("map_to_ring: variable " + f.ring()->vars[v] +
                                            " missing in target ring");
            m.e[lut[v]] = t.m.e[v];
            m.deg += t.m.e[v];
        }
        out = out + Poly::term(target, ord, m, t.c);
    }
    return out;
}

}  // namespace badproj::poly

#endif
