#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "badproj/psd.hpp"
#include "badproj/subspace.hpp"
#include "badproj/sym_matrix.hpp"

using namespace badproj;

namespace {

SymMatrix sym(std::vector<std::vector<long>> rows) {
    std::vector<std::vector<Rational>> r;
    for (auto& row : rows) {
        std::vector<Rational> rr;
        for (long x : row) rr.emplace_back(x);
        r.push_back(std::move(rr));
    }
    return SymMatrix::from_rows(r);
}

SymMatrix randomSym(std::mt19937& rng, int n, int lo = -5, int hi = 5) {
    std::uniform_int_distribution<int> num(lo, hi);
    std::uniform_int_distribution<int> den(1, 4);
    SymMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Rational q(num(rng), den(rng));
            q.canonicalize();
            m.at(i, j) = q;
        }
    return m;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
    CHECK(rational_from_string("3/4") == Rational(3, 4));
    CHECK(rational_from_string("-6/4") == Rational(-3, 2));
    CHECK(rational_from_string("12") == 12);
    CHECK(to_string(Rational(-3, 2)) == "-3/2");
    CHECK_THROWS(rational_from_string("1/0"));
    CHECK_THROWS(rational_from_string("abc"));
    CHECK_THROWS(rational_from_string("1.5"));
}

TEST_CASE("continued fraction rationalization") {
    CHECK(rationalize(0.5) == Rational(1, 2));
    CHECK(rationalize(-0.333333333333, 100) == Rational(-1, 3));
    CHECK(rationalize(7.0 / 9.0 + 1e-13, 10000) == Rational(7, 9));
    CHECK(rationalize(1e-12, 10000) == 0);
    CHECK(rationalize(3.0, 10) == 3);
    const Rational r = rationalize(0.7143, 7);
    CHECK(r == Rational(5, 7));
}

TEST_CASE("trace_inner examples") {
    CHECK(trace_inner(sym({{1, 0}, {0, 0}}), sym({{0, 1}, {1, 0}})) == 0);
    for (int n : {1, 2, 3, 5}) {
        CHECK(trace_inner(SymMatrix::identity(n), SymMatrix::identity(n)) == n);
    }
    CHECK(trace_inner(SymMatrix::diag({1, 1, 0}), SymMatrix::diag({0, 0, 1})) == 0);
    CHECK_THROWS(trace_inner(SymMatrix::identity(2), SymMatrix::identity(3)));
}

TEST_CASE("psd_rank_exact basic examples") {
    {
        const PsdReport r = psd_rank_exact(SymMatrix::diag({1, 1, 0, 0}));
        CHECK(r.status == PsdStatus::PositiveSemidefinite);
        CHECK(r.rank == 2);
        REQUIRE(r.kernel.size() == 2);
        for (const auto& v : r.kernel) {
            CHECK(v[0] == 0);
            CHECK(v[1] == 0);
        }
    }
    {
        const PsdReport r = psd_rank_exact(sym({{0, 1}, {1, 0}}));
        CHECK(r.status == PsdStatus::Indefinite);
        CHECK(r.rank == 2);
    }
    {
        const PsdReport r = psd_rank_exact(SymMatrix::identity(3));
        CHECK(r.status == PsdStatus::PositiveDefinite);
        CHECK(r.rank == 3);
    }
    {
        // negative definite counts as indefinite for this report
        const PsdReport r = psd_rank_exact(SymMatrix::diag({-1, -2}));
        CHECK(r.status == PsdStatus::Indefinite);
    }
    {
        // (x1+x2)^2
        const PsdReport r = psd_rank_exact(sym({{1, 1}, {1, 1}}));
        CHECK(r.status == PsdStatus::PositiveSemidefinite);
        CHECK(r.rank == 1);
        REQUIRE(r.kernel.size() == 1);
        CHECK(r.kernel[0] == std::vector<Rational>{1, -1});
    }
}

TEST_CASE("psd_rank_exact on the tangency point of the parametric family") {
    // X = 14 A1 - 18 A2 + 24 A3 + A4 at t = 194
    const SymMatrix x = sym({{320, 160, 352, 192},
                             {160, 160, 208, 208},
                             {352, 208, 400, 256},
                             {192, 208, 256, 272}});
    const PsdReport r = psd_rank_exact(x);
    CHECK(r.status == PsdStatus::PositiveSemidefinite);
    CHECK(r.rank == 2);
    for (const auto& v : r.kernel) {
        SymMatrix probe = x;
        const auto res = probe.to_dense().mul_vec(v);
        for (const Rational& q : res) CHECK(q == 0);
    }
}

TEST_CASE("psd_rank_exact reconstruction and float-oracle agreement") {
    std::mt19937 rng(12345);
    int checked = 0;
    for (int iter = 0; iter < 1000; ++iter) {
        const int n = 1 + static_cast<int>(rng() % 5);
        SymMatrix a = randomSym(rng, n);
        const PsdReport rep = psd_rank_exact(a);
        REQUIRE(rep.reconstruct() == a);

        // float eigenvalue oracle (plain Jacobi is overkill; use char poly sign
        // checks only when eigenvalues are comfortably away from zero)
        std::vector<double> diag(n * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) diag[i * n + j] = a.at(i, j).get_d();
        // power-free oracle: use Eigen through a minimal detour is avoided
        // here; instead check consistency of status with exact quad forms on
        // random vectors, plus rank against exact dense rank.
        CHECK(rep.rank == a.to_dense().rank());
        std::uniform_int_distribution<int> num(-3, 3);
        for (int t = 0; t < 8; ++t) {
            std::vector<Rational> v(n);
            for (auto& q : v) q = num(rng);
            const Rational qv = a.quad(v);
            if (rep.status != PsdStatus::Indefinite) {
                if (qv < 0) {
                    // PSD claim contradicted -> fail loudly
                    REQUIRE(qv >= 0);
                }
            }
        }
        ++checked;
    }
    CHECK(checked == 1000);
}

TEST_CASE("kernel vectors annihilate exactly") {
    std::mt19937 rng(99);
    for (int iter = 0; iter < 200; ++iter) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const int r = 1 + static_cast<int>(rng() % n);
        // A = V V^T with V n x r -> PSD of rank <= r
        RatMatrix v(n, r);
        std::uniform_int_distribution<int> num(-3, 3);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < r; ++j) v.at(i, j) = num(rng);
        const RatMatrix prod = v * v.transpose();
        SymMatrix a(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) a.at(i, j) = prod.at(i, j);
        const PsdReport rep = psd_rank_exact(a);
        CHECK(rep.status != PsdStatus::Indefinite);
        CHECK(rep.rank <= r);
        for (const auto& k : rep.kernel) {
            const auto res = a.to_dense().mul_vec(k);
            for (const Rational& q : res) CHECK(q == 0);
        }
    }
}

TEST_CASE("complementary PSD spans have vanishing product") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(-3, 3);
    for (int iter = 0; iter < 50; ++iter) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const int r = 1 + static_cast<int>(rng() % (n - 1));
        RatMatrix v(n, r);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < r; ++j) v.at(i, j) = num(rng);
        if (v.rank() < r) continue;
        // columns of W span the kernel of V^T
        const auto wbasis = v.transpose().nullspace();
        RatMatrix w(n, static_cast<int>(wbasis.size()));
        for (int c = 0; c < w.cols(); ++c)
            for (int i = 0; i < n; ++i) w.at(i, c) = wbasis[c][i];
        const RatMatrix ad = v * v.transpose(), bd = w * w.transpose();
        SymMatrix a(n), b(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) { a.at(i, j) = ad.at(i, j); b.at(i, j) = bd.at(i, j); }
        CHECK(trace_inner(a, b) == 0);
        const RatMatrix prod = mat_mul(a, b);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) CHECK(prod.at(i, j) == 0);
    }
}

TEST_CASE("orthogonal_complement of the rank-gap example") {
    // L = span(x1^2, x2^2 + 2 x1 x3, 2 x2 x3) in S^3
    const SymMatrix q1 = sym({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}});
    const SymMatrix q2 = sym({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
    const SymMatrix q3 = sym({{0, 0, 0}, {0, 0, 1}, {0, 1, 0}});
    const Subspace l(3, {q1, q2, q3});
    const Subspace perp = l.orthogonal_complement();
    CHECK(perp.dim() == 3);
    // expected: span of 2 x1 x2, 2 x1 x3 - 2 x2^2, x3^2
    const SymMatrix e1 = sym({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}});
    const SymMatrix e2 = sym({{0, 0, 1}, {0, -2, 0}, {1, 0, 0}});
    const SymMatrix e3 = sym({{0, 0, 0}, {0, 0, 0}, {0, 0, 1}});
    CHECK(perp.spans_same(Subspace(3, {e1, e2, e3})));
}

TEST_CASE("complement dimensions and involution") {
    std::mt19937 rng(4242);
    for (int iter = 0; iter < 40; ++iter) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const int N = static_cast<int>(SymMatrix::svec_size(n));
        const int k = 1 + static_cast<int>(rng() % N);
        std::vector<SymMatrix> gens;
        for (int i = 0; i < k; ++i) gens.push_back(randomSym(rng, n));
        std::optional<Subspace> l;
        try {
            l.emplace(n, gens);
        } catch (const std::invalid_argument&) {
            continue;  // random basis happened to be dependent
        }
        const Subspace perp = l->orthogonal_complement();
        CHECK(l->dim() + perp.dim() == N);
        const Subspace back = perp.orthogonal_complement();
        CHECK(back.spans_same(*l));
        for (const SymMatrix& a : l->basis())
            for (const SymMatrix& b : perp.basis()) CHECK(trace_inner(a, b) == 0);
    }
}

TEST_CASE("complement of the full space is zero-dimensional") {
    std::vector<SymMatrix> all;
    const int n = 2;
    for (size_t idx = 0; idx < SymMatrix::svec_size(n); ++idx) {
        std::vector<Rational> v(SymMatrix::svec_size(n));
        v[idx] = 1;
        all.push_back(SymMatrix::from_svec(n, v));
    }
    const Subspace full(n, all);
    CHECK(full.orthogonal_complement().dim() == 0);
}

TEST_CASE("dependent basis is rejected") {
    const SymMatrix a = sym({{1, 0}, {0, 0}});
    const SymMatrix b = sym({{2, 0}, {0, 0}});
    CHECK_THROWS_AS(Subspace(2, {a, b}), std::invalid_argument);
}

TEST_CASE("congruence_normalize examples") {
    {
        // q = (x1+x2)^2 in S^2: s = 1, G^T Q G = diag(d, 0) with d > 0
        const SymMatrix q = sym({{1, 1}, {1, 1}});
        const SymMatrix other = sym({{1, 0}, {0, -1}});
        const Subspace l(2, {q, other});
        const Congruence c = congruence_normalize(l, q);
        CHECK(c.s == 1);
        const SymMatrix d = q.congruence(c.g);
        CHECK(d.at(0, 0) > 0);
        CHECK(d.at(0, 1) == 0);
        CHECK(d.at(1, 1) == 0);
    }
    {
        // q already diagonal: G is a permuted identity
        const SymMatrix q = SymMatrix::diag({1, 1, 0});
        const Subspace l(3, {q});
        const Congruence c = congruence_normalize(l, q);
        CHECK(c.s == 2);
        CHECK(q.congruence(c.g) == SymMatrix::diag({1, 1, 0}));
    }
    {
        // three-quadrics witness: q = 6 (5x1+7x2+7x3)^2, I_L generator
        // proportional to (5, 7, 7)
        RatMatrix v(3, 1);
        v.at(0, 0) = 5; v.at(1, 0) = 7; v.at(2, 0) = 7;
        const RatMatrix qd = v * v.transpose();
        SymMatrix q(3);
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) q.at(i, j) = 6 * qd.at(i, j);
        const Subspace l(3, {q});
        const Congruence c = congruence_normalize(l, q);
        CHECK(c.s == 1);
        REQUIRE(c.ilGenerators.size() == 1);
        CHECK(c.ilGenerators[0] == std::vector<Rational>{5, 7, 7});
        // kernel of G^T Q G is exactly span(e2, e3)
        const SymMatrix d = q.congruence(c.g);
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j)
                if (i > 0 || j > 0) CHECK(d.at(i, j) == 0);
        CHECK(d.at(0, 0) > 0);
    }
}

TEST_CASE("congruence_normalize rejects bad input") {
    const SymMatrix q = sym({{0, 1}, {1, 0}});
    const Subspace l(2, {q});
    CHECK_THROWS(congruence_normalize(l, q));                        // not PSD
    const SymMatrix p = sym({{1, 0}, {0, 0}});
    CHECK_THROWS(congruence_normalize(l, p));                        // not in span
}

TEST_CASE("congruence invariants on random PSD quadrics") {
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> num(-3, 3);
    for (int iter = 0; iter < 60; ++iter) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const int r = 1 + static_cast<int>(rng() % n);
        RatMatrix v(n, r);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < r; ++j) v.at(i, j) = num(rng);
        const RatMatrix qd = v * v.transpose();
        SymMatrix q(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) q.at(i, j) = qd.at(i, j);
        if (q.is_zero()) continue;
        const Subspace l(n, {q});
        const Congruence c = congruence_normalize(l, q);
        CHECK(c.s == psd_rank_exact(q).rank);
        const SymMatrix d = q.congruence(c.g);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                if (i == j && i < c.s) CHECK(d.at(i, j) > 0);
                else CHECK(d.at(i, j) == 0);
            }
    }
}

TEST_CASE("plucker coordinates") {
    {
        const SymMatrix a = sym({{1, 0}, {0, 0}});
        const SymMatrix b = sym({{0, 1}, {1, 0}});
        const PluckerVector p = plucker(Subspace(2, {a, b}));
        CHECK(p.coordinates == std::vector<Rational>{1, 0, 0});
    }
    {
        const SymMatrix a = sym({{1, 0}, {0, 0}});
        const SymMatrix b = sym({{0, 0}, {0, 1}});
        const PluckerVector p = plucker(Subspace(2, {a, b}));
        CHECK(p.coordinates == std::vector<Rational>{0, 1, 0});
    }
    {
        // basis change scales all coordinates by det(M)
        std::mt19937 rng(5);
        const SymMatrix a = randomSym(rng, 3), b = randomSym(rng, 3);
        const Subspace l(3, {a, b});
        // M = [[2, 1], [1, 1]], det 1; and [[3, 0], [1, 2]], det 6
        const Subspace l2(3, {2 * a + b, a + b});
        const Subspace l3(3, {Rational(3) * a, a + 2 * b});
        const auto p = plucker(l).coordinates;
        const auto p2 = plucker(l2).coordinates;
        const auto p3 = plucker(l3).coordinates;
        REQUIRE(p.size() == p2.size());
        for (size_t i = 0; i < p.size(); ++i) {
            CHECK(p2[i] == 1 * p[i]);
            CHECK(p3[i] == 6 * p[i]);
        }
    }
}

TEST_CASE("svec indexing round trip") {
    const int n = 5;
    for (size_t idx = 0; idx < SymMatrix::svec_size(n); ++idx) {
        const auto [i, j] = SymMatrix::svec_entry(n, idx);
        CHECK(SymMatrix::svec_index(n, i, j) == idx);
    }
}
