#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "simcf/parser.hpp"

using namespace simcf;
using namespace simcf::testing;

TEST_CASE("worked inputs") {
    ElementSpec a = parse("5/13");
    CHECK(a.element == QuadElem(rat(5, 13)));
    CHECK(!a.congruence.has_value());

    ElementSpec b = parse("(17 + sqrt(37))/10 ; residue 2 mod 7");
    CHECK(b.element == quad(17, 10, 1, 10, 37));
    REQUIRE(b.congruence.has_value());
    CHECK(b.congruence->residue == 2);
    CHECK(b.congruence->modulus == 7);
    auto sel = resolve_root_select(b, 7);
    REQUIRE(sel.has_value());
    CHECK(sel->residue == 3);

    ElementSpec c = parse("2*sqrt(17) - 8 ; residue 2 mod 8");
    CHECK(c.element == quad(-8, 1, 2, 1, 17));
    auto sel2 = resolve_root_select(c, 2);
    REQUIRE(sel2.has_value());
    CHECK(sel2->residue == 1);
}

TEST_CASE("grammar coverage") {
    CHECK(parse("sqrt(68)").element == sqrt_of(68));
    CHECK(parse("sqrt(68)").element == quad(0, 1, 2, 1, 17));
    CHECK(parse("sqrt(-28)").element == quad(0, 1, 2, 1, -7));
    CHECK(parse("-49/64 + 9/64 * sqrt(17)").element == quad(-49, 64, 9, 64, 17));
    CHECK(parse("(-49 + 9*sqrt(17)) / 64").element == quad(-49, 64, 9, 64, 17));
    CHECK(parse("  - 7 / 2 ").element == QuadElem(rat(-7, 2)));
    CHECK(parse("sqrt(9)").element == QuadElem(rat(3)));
    CHECK(parse("3/sqrt(17)").element == quad(0, 1, 3, 17, 17));
    CHECK(parse("1; residue 1 mod 2^3").element == QuadElem(rat(1)));
    CHECK(parse("1; residue 1 mod 2^3").congruence->modulus == 8);
}

TEST_CASE("syntax errors carry a position") {
    CHECK_THROWS_AS(parse(""), SyntaxError);
    CHECK_THROWS_AS(parse("5//3"), SyntaxError);
    CHECK_THROWS_AS(parse("sqrt 17"), SyntaxError);
    CHECK_THROWS_AS(parse("(1 + 2"), SyntaxError);
    CHECK_THROWS_AS(parse("5/13 extra"), SyntaxError);
    CHECK_THROWS_AS(parse("5/13 ; residue"), SyntaxError);
    CHECK_THROWS_AS(parse("1/0"), SyntaxError);
    try {
        parse("5/13 x");
    } catch (const SyntaxError& e) {
        CHECK(e.position == 5);
    }
    CHECK_THROWS_AS(parse("sqrt(17) + sqrt(33)"), DomainMismatch);
}

TEST_CASE("congruence resolution failures") {
    // 37 = 2 mod 7 has roots 3 and 4; (17 + s)/10 takes residues 2 and
    // (17+4)*5^-1 ... only one matches "2", neither matches "5".
    CHECK_THROWS_AS(resolve_root_select(parse("(17 + sqrt(37))/10 ; residue 5 mod 7"), 7),
                    UnsatisfiableCongruence);
    // Modulus not a power of p.
    CHECK_THROWS_AS(resolve_root_select(parse("sqrt(17) ; residue 1 mod 6"), 2),
                    UnsatisfiableCongruence);
    // Ambiguous: both roots of 17 are odd, so mod 2 cannot split them.
    CHECK_THROWS_AS(resolve_root_select(parse("sqrt(17) ; residue 1 mod 2"), 2),
                    UnsatisfiableCongruence);
    // Rational element: clause verified, no root selected.
    CHECK(!resolve_root_select(parse("5/13 ; residue 1 mod 2"), 2).has_value());
    CHECK_THROWS_AS(resolve_root_select(parse("5/13 ; residue 0 mod 2"), 2),
                    UnsatisfiableCongruence);
}

TEST_CASE("round trip through to_string") {
    for (int iter = 0; iter < 300; ++iter) {
        long d = 2 + rand_in(0, 300);
        auto [f, sf] = squarefree_split(d);
        if (sf == 1) continue;
        QuadElem x = QuadElem::make(random_rat(80, 30), random_rat(80, 30), sf);
        CHECK(parse(to_string(x)).element == x);
    }
    CHECK(parse(to_string(QuadElem(rat(-7, 3)))).element == QuadElem(rat(-7, 3)));
}
