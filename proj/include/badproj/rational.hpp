#ifndef BADPROJ_RATIONAL_HPP
#define BADPROJ_RATIONAL_HPP

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace badproj {

/// Exact arithmetic everywhere: arbitrary-precision rationals, always kept
/// canonical (reduced, positive denominator) by GMP.
using Rational = mpq_class;
using Integer = mpz_class;

inline int sign(const Rational& q) { return sgn(q); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Parse "p/q" or a plain integer. Rejects zero denominators and garbage.
inline Rational rational_from_string(std::string_view s) {
    std::string t(s);
    // trim
    const auto b = t.find_first_not_of(" \t");
    const auto e = t.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty rational literal");
    t = t.substr(b, e - b + 1);
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), t.c_str(), 10) != 0)
        throw std::invalid_argument("bad rational literal: '" + t + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator in rational literal: '" + t + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Nearest rational with denominator <= den_bound, via continued-fraction
/// convergents. Used to snap interior-point output to exact candidates.
inline Rational rationalize(double x, unsigned long den_bound = 10000) {
    if (!std::isfinite(x)) throw std::domain_error("rationalize: non-finite input");
    if (den_bound == 0) den_bound = 1;
    const bool neg = x < 0;
    double v = neg ? -x : x;

    // convergents p/q of the continued fraction of v
    Integer p0 = 1, q0 = 0;       // h_{-1}, k_{-1}
    Integer p1, q1 = 1;           // h_0 = floor(v), k_0 = 1
    double fl = std::floor(v);
    p1 = Integer(fl);
    double frac = v - fl;
    Integer bound(static_cast<unsigned long>(den_bound));
    for (int it = 0; it < 64 && frac > 1e-18; ++it) {
        v = 1.0 / frac;
        fl = std::floor(v);
        if (fl > 1e18) break;
        Integer a(fl);
        Integer p2 = a * p1 + p0;
        Integer q2 = a * q1 + q0;
        if (q2 > bound) {
            // semiconvergent with the largest admissible coefficient
            Integer amax = (bound - q0) / q1;
            if (amax * 2 >= a) {  // closer than the previous convergent
                Integer ps = amax * p1 + p0, qs = amax * q1 + q0;
                if (qs >= 1 && qs <= bound) {
                    Rational cand(ps, qs);
                    cand.canonicalize();
                    Rational prev(p1, q1);
                    prev.canonicalize();
                    const double target = neg ? -std::fabs(x) : std::fabs(x);
                    (void)target;
                    if (std::fabs(cand.get_d() - std::fabs(x)) <=
                        std::fabs(prev.get_d() - std::fabs(x))) {
                        p1 = ps; q1 = qs;
                    }
                }
            }
            break;
        }
        p0 = p1; q0 = q1;
        p1 = p2; q1 = q2;
        frac = v - fl;
    }
    Rational r(p1, q1);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

inline long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace badproj

#endif
