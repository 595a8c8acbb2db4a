#ifndef BADPROJ_QUADPARSE_HPP
#define BADPROJ_QUADPARSE_HPP

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "badproj/poly.hpp"
#include "badproj/sym_matrix.hpp"

namespace badproj::cli {

struct ParseError : std::runtime_error {
    size_t position;
    ParseError(size_t pos, const std::string& msg)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

namespace detail {

/// Recursive-descent parser for sums of products of rational literals and
/// powered variables:  expr := ['-'] term (('+'|'-') term)*,
/// term := item ('*' item)*, item := number | var ['^' int].
class ExprParser {
public:
    ExprParser(std::string_view text, poly::RingPtr ring)
        : s_(text), ring_(std::move(ring)) {}

    poly::Poly parse() {
        poly::Poly p = parse_expr();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError(pos_, "unexpected trailing input");
        return p;
    }

private:
    poly::Poly parse_expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') { neg = true; ++pos_; }
        else if (peek() == '+') { ++pos_; }
        poly::Poly acc = parse_term();
        if (neg) acc = -acc;
        while (true) {
            skip_ws();
            const char c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            poly::Poly t = parse_term();
            acc = (c == '+') ? acc + t : acc - t;
        }
        return acc;
    }

    poly::Poly parse_term() {
        poly::Poly acc = parse_item();
        while (true) {
            skip_ws();
            if (peek() != '*') break;
            ++pos_;
            acc = acc * parse_item();
        }
        return acc;
    }

    poly::Poly parse_item() {
        skip_ws();
        const char c = peek();
        if (c == '\0') throw ParseError(pos_, "unexpected end of input");
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return poly::Poly::constant(ring_, ord_, parse_number());
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const size_t start = pos_;
            std::string name;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                name.push_back(s_[pos_++]);
            const int idx = ring_->index_of(name);
            if (idx < 0) throw ParseError(start, "unknown variable '" + name + "'");
            int pow = 1;
            skip_ws();
            if (peek() == '^') {
                ++pos_;
                skip_ws();
                const size_t ps = pos_;
                if (!std::isdigit(static_cast<unsigned char>(peek())))
                    throw ParseError(ps, "expected integer exponent");
                pow = 0;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    pow = pow * 10 + (s_[pos_] - '0');
                    ++pos_;
                    if (pow > 1000) throw ParseError(ps, "exponent too large");
                }
            }
            return poly::Poly::variable(ring_, ord_, idx, pow);
        }
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }

    Rational parse_number() {
        const size_t start = pos_;
        std::string digits;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            digits.push_back(s_[pos_++]);
        if (pos_ < s_.size() && s_[pos_] == '.')
            throw ParseError(pos_, "decimal literals are not accepted; use p/q");
        skip_ws();
        if (peek() == '/') {
            const size_t save = pos_;
            ++pos_;
            skip_ws();
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                std::string den;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    den.push_back(s_[pos_++]);
                Rational q = rational_from_string(digits + "/" + den);
                return q;
            }
            pos_ = save;  // '/' belonged to something else; not our grammar, will error later
        }
        if (digits.empty()) throw ParseError(start, "expected number");
        return rational_from_string(digits);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    std::string_view s_;
    size_t pos_ = 0;
    poly::RingPtr ring_;
    poly::TermOrder ord_ = poly::TermOrder::degrevlex();
};

}  // namespace detail

/// Parse a polynomial over an explicit variable list.
inline poly::Poly parse_polynomial(std::string_view text, const poly::RingPtr& ring) {
    return detail::ExprParser(text, ring).parse();
}

inline poly::RingPtr x_ring(int n) {
    std::vector<std::string> vars;
    for (int i = 1; i <= n; ++i) vars.push_back("x" + std::to_string(i));
    return poly::make_ring(std::move(vars));
}

/// Quadratic-form text -> symmetric matrix: the x_i^2 coefficient lands on
/// the diagonal, a cross term c*x_i*x_j contributes c/2 to A_ij = A_ji.
inline SymMatrix parse_quadratic(std::string_view text, int n) {
    const poly::RingPtr ring = x_ring(n);
    const poly::Poly p = parse_polynomial(text, ring);
    SymMatrix a(n);
    for (const poly::Term& t : p.terms()) {
        if (t.m.deg != 2)
            throw ParseError(0, "term of degree " + std::to_string(t.m.deg) +
                                    " in quadratic form '" + std::string(text) + "'");
        int vi = -1, vj = -1;
        for (int v = 0; v < n; ++v) {
            if (t.m.e[v] == 2) { vi = vj = v; break; }
            if (t.m.e[v] == 1) { (vi < 0 ? vi : vj) = v; }
        }
        if (vi == vj)
            a.at(vi, vi) += t.c;
        else
            a.at(vi, vj) += t.c / 2;
    }
    return a;
}

/// Render a symmetric matrix back as a quadratic-form string; inverse of
/// parse_quadratic on the SymMatrix level.
inline std::string quadratic_to_string(const SymMatrix& a) {
    const poly::RingPtr ring = x_ring(a.n());
    poly::Poly p = poly::Poly::zero(ring, poly::TermOrder::degrevlex());
    for (int i = 0; i < a.n(); ++i) {
        for (int j = i; j < a.n(); ++j) {
            if (a.at(i, j) == 0) continue;
            poly::Monomial m = poly::Monomial::one(a.n());
            m.e[i] = static_cast<uint16_t>(m.e[i] + 1);
            m.e[j] = static_cast<uint16_t>(m.e[j] + 1);
            m.deg = 2;
            p = p + poly::Poly::term(ring, p.order(), m, i == j ? a.at(i, j) : 2 * a.at(i, j));
        }
    }
    return p.str();
}

}  // namespace badproj::cli

#endif
