#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "badproj/pataki.hpp"
#include "badproj/quadparse.hpp"

using namespace badproj;
using namespace badproj::pataki;
using badproj::cli::parse_quadratic;

namespace {

Subspace quadspace(int n, std::vector<std::string> qs) {
    std::vector<SymMatrix> basis;
    for (const auto& q : qs) basis.push_back(parse_quadratic(q, n));
    return Subspace(n, basis);
}

bool proportional(const SymMatrix& a, const SymMatrix& b) {
    if (a.n() != b.n()) return false;
    const auto& u = a.svec();
    const auto& v = b.svec();
    Rational ratio = 0;
    for (size_t i = 0; i < u.size(); ++i) {
        if ((u[i] == 0) != (v[i] == 0)) return false;
        if (u[i] != 0) {
            const Rational r = v[i] / u[i];
            if (ratio == 0)
                ratio = r;
            else if (r != ratio)
                return false;
        }
    }
    return ratio != 0;
}

Subspace three_quadrics() {
    return quadspace(3, {"-52*x1^2+412*x1*x2+472*x1*x3+462*x2^2+1164*x2*x3+750*x3^2",
                         "-101*x1^2+435*x1*x2+480*x1*x3+518*x2^2+1307*x2*x3+853*x3^2",
                         "-55*x1^2+362*x1*x2+482*x1*x3+434*x2^2+1166*x2*x3+772*x3^2"});
}

Subspace rank_gap3() {
    return quadspace(3, {"x1^2", "x2^2+2*x1*x3", "2*x2*x3"});
}

}  // namespace

TEST_CASE("pataki_range") {
    CHECK(pataki_range(4, 4) == std::vector<int>{2, 3});
    CHECK(pataki_range(4, 7) == std::vector<int>{1, 2});
    CHECK(pataki_range(3, 5) == std::vector<int>{1});
    CHECK(pataki_range(2, 2) == std::vector<int>{1});
    CHECK(pataki_range(3, 2) == std::vector<int>{2});
    CHECK(pataki_range(4, 5) == std::vector<int>{2});
    CHECK_THROWS(pataki_range(3, 7));
}

TEST_CASE("spectrahedral rank: identity span") {
    for (int n : {2, 3, 4}) {
        const RankReport r = spectrahedral_rank(Subspace(n, {SymMatrix::identity(n)}));
        CHECK(r.s == n);
        CHECK(r.certified == Certified::Exact);
        REQUIRE(r.witness);
        CHECK(psd_rank_exact(*r.witness).status == PsdStatus::PositiveDefinite);
    }
}

TEST_CASE("spectrahedral rank: off-diagonal span has rank zero") {
    const Subspace l = quadspace(3, {"2*x1*x2", "2*x1*x3", "2*x2*x3"});
    const RankReport r = spectrahedral_rank(l);
    CHECK(r.s == 0);
    CHECK(r.certified == Certified::Exact);
    CHECK_FALSE(r.witness);
}

TEST_CASE("spectrahedral rank of the rank-gap example: both sides 1") {
    const Subspace l = rank_gap3();
    const RankReport rl = spectrahedral_rank(l);
    CHECK(rl.s == 1);
    CHECK(rl.certified == Certified::Exact);
    REQUIRE(rl.witness);
    CHECK(proportional(*rl.witness, parse_quadratic("x1^2", 3)));

    const RankReport rp = spectrahedral_rank(l.orthogonal_complement());
    CHECK(rp.s == 1);
    CHECK(rp.certified == Certified::Exact);
    CHECK(rl.s + rp.s <= 3);
}

TEST_CASE("spectrahedral rank of the three-quadrics example") {
    const Subspace l = three_quadrics();
    const RankReport r = spectrahedral_rank(l);
    CHECK(r.s == 1);
    CHECK(r.certified == Certified::Exact);
    REQUIRE(r.witness);
    // witness proportional to 6 (5x1+7x2+7x3)^2
    RatMatrix v(3, 1);
    v.at(0, 0) = 5; v.at(1, 0) = 7; v.at(2, 0) = 7;
    const RatMatrix sq = v * v.transpose();
    SymMatrix expected(3);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) expected.at(i, j) = sq.at(i, j);
    CHECK(proportional(*r.witness, expected));
}

TEST_CASE("lattice data of the introductory bad plane") {
    const Subspace l = quadspace(2, {"x1^2", "2*x1*x2"});
    const RankReport r = spectrahedral_rank(l);
    REQUIRE(r.certified == Certified::Exact);
    REQUIRE(r.s == 1);
    const BlockData bd = lattice_dims(l, r);
    CHECK(bd.dimI == 2);
    CHECK(bd.dimI2 == 1);
    REQUIRE(bd.v);
    CHECK(proportional(*bd.v, parse_quadratic("2*x1*x2", 2)));
    REQUIRE(bd.ilGenerators.size() == 1);
    CHECK(bd.ilGenerators[0] == std::vector<Rational>{1, 0});
}

TEST_CASE("lattice data of the three-quadrics example") {
    const Subspace l = three_quadrics();
    const RankReport r = spectrahedral_rank(l);
    REQUIRE(r.certified == Certified::Exact);
    const BlockData bd = lattice_dims(l, r);
    CHECK(bd.dimI == 2);
    CHECK(bd.dimI2 == 1);
    REQUIRE(bd.v);
    // v lies in span{17q1 - 14q2 + 2q3, 7q1 - 4q2 - 2q3} but off the square line
    const auto coords = l.coordinates_of(*bd.v);
    REQUIRE(coords);
    const std::vector<Rational> c = *coords;
    // c must be a combination of (17,-14,2) and (7,-4,-2)
    RatMatrix m(3, 2);
    m.at(0, 0) = 17; m.at(1, 0) = -14; m.at(2, 0) = 2;
    m.at(0, 1) = 7;  m.at(1, 1) = -4;  m.at(2, 1) = -2;
    CHECK(m.solve(c).has_value());
    REQUIRE(bd.ilGenerators.size() == 1);
    CHECK(bd.ilGenerators[0] == std::vector<Rational>{5, 7, 7});
}

TEST_CASE("lattice data of the rank-gap example: equality, no witness") {
    const Subspace l = rank_gap3();
    const RankReport r = spectrahedral_rank(l);
    REQUIRE(r.certified == Certified::Exact);
    const BlockData bd = lattice_dims(l, r);
    CHECK(bd.dimI == 1);
    CHECK(bd.dimI2 == 1);
    CHECK_FALSE(bd.v);
}

TEST_CASE("decide: introductory example is bad with a lattice witness") {
    const Verdict v = decide(quadspace(2, {"x1^2", "2*x1*x2"}));
    CHECK(v.decision == Decision::Bad);
    CHECK(v.certifiedExact);
    REQUIRE(std::holds_alternative<BadLatticeWitness>(v.certificate));
    const auto& cert = std::get<BadLatticeWitness>(v.certificate);
    CHECK(proportional(cert.v, parse_quadratic("2*x1*x2", 2)));
}

TEST_CASE("decide: diagonal pencil at t=0 is good") {
    const Verdict v = decide(quadspace(2, {"x1^2", "x2^2"}));
    CHECK(v.decision == Decision::Good);
    CHECK(v.certifiedExact);
}

TEST_CASE("decide: x1^2+x2^2, x1x3 is bad") {
    const Verdict v = decide(quadspace(3, {"x1^2+x2^2", "2*x1*x3"}));
    CHECK(v.decision == Decision::Bad);
    CHECK(v.certifiedExact);
}

TEST_CASE("decide: three-quadrics example is bad") {
    const Verdict v = decide(three_quadrics());
    CHECK(v.decision == Decision::Bad);
    CHECK(v.certifiedExact);
    REQUIRE(std::holds_alternative<BadLatticeWitness>(v.certificate));
    const auto& cert = std::get<BadLatticeWitness>(v.certificate);
    REQUIRE(cert.ilGenerators.size() == 1);
    CHECK(cert.ilGenerators[0] == std::vector<Rational>{5, 7, 7});
    CHECK(cert.dimI == 2);
    CHECK(cert.dimI2 == 1);
}

TEST_CASE("decide: rank-gap example is bad via 1 + 1 < 3") {
    const Verdict v = decide(rank_gap3());
    CHECK(v.decision == Decision::Bad);
    CHECK(v.certifiedExact);
    REQUIRE(std::holds_alternative<BadRankGap>(v.certificate));
    const auto& cert = std::get<BadRankGap>(v.certificate);
    CHECK(cert.sL == 1);
    CHECK(cert.sLperp == 1);
}

TEST_CASE("decide: k = 1 is always good") {
    CHECK(decide(quadspace(3, {"x1^2"})).decision == Decision::Good);
    CHECK(decide(quadspace(2, {"2*x1*x2"})).decision == Decision::Good);
    const Verdict v = decide(quadspace(3, {"x1^2 - x2^2"}));
    CHECK(v.decision == Decision::Good);
    CHECK(std::holds_alternative<GoodK1>(v.certificate));
}

TEST_CASE("decide: off-diagonal span is good with s = 0") {
    const Verdict v = decide(quadspace(3, {"2*x1*x2", "2*x1*x3", "2*x2*x3"}));
    CHECK(v.decision == Decision::Good);
    CHECK(v.certifiedExact);
    CHECK(v.sL.s == 0);
    REQUIRE(std::holds_alternative<GoodZero>(v.certificate));
}

TEST_CASE("decide: proposition pencil across t") {
    for (const Rational& t : {Rational(1), Rational(-1), Rational(5), Rational(1, 2)}) {
        SymMatrix q2(3);
        q2.at(1, 1) = 1;
        q2.at(0, 2) = t / 2;
        const Subspace l(3, {parse_quadratic("x1^2", 3), q2});
        const Verdict v = decide(l);
        INFO("t = " << to_string(t));
        CHECK(v.decision == Decision::Bad);
        CHECK(v.certifiedExact);
    }
    SymMatrix q2(3);
    q2.at(1, 1) = 1;
    CHECK(decide(Subspace(3, {parse_quadratic("x1^2", 3), q2})).decision == Decision::Good);
}

TEST_CASE("decide: dual pair where primal is bad and complement is good") {
    const Subspace l = quadspace(3, {"x1^2+x2^2", "2*x1*x2+2*x1*x3", "2*x2*x3"});
    const Subspace perp = quadspace(3, {"x3^2", "x1^2-x2^2", "2*x1*x2-2*x1*x3"});
    REQUIRE(l.orthogonal_complement().spans_same(perp));
    CHECK(decide(l).decision == Decision::Bad);
    CHECK(decide(perp).decision == Decision::Good);
}

TEST_CASE("decide: five-dimensional disagreement example is bad") {
    const Subspace l =
        quadspace(3, {"x1^2-x2^2", "x3^2", "2*x1*x2", "2*x1*x3", "2*x2*x3"});
    const Verdict v = decide(l);
    CHECK(v.decision == Decision::Bad);
    CHECK(v.certifiedExact);
}

TEST_CASE("verdict invariance under congruence and basis change") {
    std::mt19937 rng(808);
    std::uniform_int_distribution<int> num(-2, 2);
    const Subspace base = rank_gap3();
    const Decision expected = decide(base).decision;
    int done = 0;
    for (int iter = 0; iter < 30 && done < 10; ++iter) {
        // random invertible congruence G
        RatMatrix g(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) g.at(i, j) = num(rng);
        if (g.rank() != 3) continue;
        std::vector<SymMatrix> tb;
        for (const SymMatrix& a : base.basis()) tb.push_back(a.congruence(g));
        const Subspace transformed(3, tb);
        CHECK(decide(transformed).decision == expected);
        // random basis change M
        RatMatrix m(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m.at(i, j) = num(rng);
        if (m.rank() != 3) continue;
        std::vector<SymMatrix> mb(3, SymMatrix(3));
        for (int i = 0; i < 3; ++i) {
            SymMatrix acc(3);
            for (int j = 0; j < 3; ++j) acc = acc + m.at(i, j) * base.basis(j);
            mb[i] = acc;
        }
        CHECK(decide(Subspace(3, mb)).decision == expected);
        ++done;
    }
    CHECK(done >= 10);
}

TEST_CASE("certified ranks never exceed n in sum") {
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> num(-2, 2);
    for (int iter = 0; iter < 20; ++iter) {
        const int n = 2 + static_cast<int>(rng() % 2);
        const int N = static_cast<int>(SymMatrix::svec_size(n));
        const int k = 1 + static_cast<int>(rng() % (N - 1));
        std::vector<SymMatrix> basis;
        for (int g = 0; g < k; ++g) {
            SymMatrix a(n);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) a.at(i, j) = num(rng);
            basis.push_back(a);
        }
        std::optional<Subspace> l;
        try {
            l.emplace(n, basis);
        } catch (const std::invalid_argument&) {
            continue;
        }
        const Verdict v = decide(*l);
        if (v.sL.certified == Certified::Exact && v.sLperp.certified == Certified::Exact)
            CHECK(v.sL.s + v.sLperp.s <= n);
    }
}
