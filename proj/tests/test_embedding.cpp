#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "helpers.hpp"

using namespace simcf;
using namespace simcf::testing;

TEST_CASE("vp_embed worked values") {
    EmbeddingCtx ctx(2, 17, RootSelect{1});
    CHECK(vp_embed(sqrt_of(17), ctx) == Valuation::finite(0));

    QuadElem alpha = quad(-49, 64, 9, 64, 17);
    CHECK(vp_embed(alpha, ctx) == Valuation::finite(3));
    CHECK(vp_embed(alpha.conjugate(), ctx) == Valuation::finite(-5));

    CHECK_THROWS_AS(vp_embed(QuadElem(rat(0)), ctx), ZeroElement);
    CHECK(vp_embed(QuadElem(rat(-13, 8)), ctx) == Valuation::finite(-3));
}

TEST_CASE("vp_embed valuation pairs sum to the norm valuation") {
    const long ds[] = {17, 33, 41, 73, -7, -15, 105};
    for (long d : ds) {
        EmbeddingCtx ctx(2, d);
        for (int iter = 0; iter < 120; ++iter) {
            QuadElem x = QuadElem::make(random_rat(60, 32), random_rat(60, 32), d);
            if (x.is_zero() || x.is_rational()) continue;
            long v = vp_embed(x, ctx).value();
            long vc = vp_embed(x.conjugate(), ctx).value();
            CHECK(v + vc == vp_rational(x.norm(), 2).value());
        }
    }
    EmbeddingCtx ctx7(7, 37, RootSelect{3});
    for (int iter = 0; iter < 120; ++iter) {
        QuadElem x = QuadElem::make(random_rat(60, 32), random_rat(60, 32), 37);
        if (x.is_zero() || x.is_rational()) continue;
        long v = vp_embed(x, ctx7).value();
        long vc = vp_embed(x.conjugate(), ctx7).value();
        CHECK(v + vc == vp_rational(x.norm(), 7).value());
    }
}

TEST_CASE("floor_p worked values") {
    EmbeddingCtx ctx(2, 0);
    CHECK(floor_p(QuadElem(rat(5, 13)), ctx) == rat(1));
    CHECK(floor_p(QuadElem(rat(-13, 8)), ctx) == rat(3, 8));
    CHECK(floor_p(QuadElem(rat(0)), ctx) == rat(0));
}

TEST_CASE("floor_p strips the nonnegative-index digits") {
    const long ds[] = {17, 41, -7, 33};
    for (long d : ds) {
        EmbeddingCtx ctx(2, d);
        for (int iter = 0; iter < 150; ++iter) {
            QuadElem x = QuadElem::make(random_rat(50, 24), random_rat(50, 24), d);
            if (x.is_zero()) continue;
            BigRat c = floor_p(x, ctx);
            // c = t / 2^i with t in [0, 2^(i+1)), so 0 <= c < 2
            long i = std::max(0L, -vp_embed(x, ctx).value());
            CHECK(c >= 0);
            CHECK(c < 2);
            CHECK(vp_rational(c, 2) >= Valuation::finite(-i));
            QuadElem diff = x - QuadElem(c);
            if (!diff.is_zero()) CHECK(vp_embed(diff, ctx) > Valuation::finite(0));
        }
    }
    EmbeddingCtx ctx3(3, 10);
    for (int iter = 0; iter < 150; ++iter) {
        QuadElem x = QuadElem::make(random_rat(50, 24), random_rat(50, 24), 10);
        if (x.is_zero()) continue;
        BigRat c = floor_p(x, ctx3);
        CHECK(c >= 0);
        CHECK(c < 3);
        QuadElem diff = x - QuadElem(c);
        if (!diff.is_zero()) CHECK(vp_embed(diff, ctx3) > Valuation::finite(0));
    }
}

TEST_CASE("embedding context rejects impossible radicals") {
    CHECK_THROWS_AS(EmbeddingCtx(2, 2), NotASquare);  // 2 != 1 mod 8
    CHECK_THROWS_AS(EmbeddingCtx(5, 2), NotASquare);  // non-residue mod 5
    CHECK_THROWS_AS(EmbeddingCtx(7, 7), NotASquare);  // p | d
    CHECK_NOTHROW(EmbeddingCtx(2, -7));
    CHECK_NOTHROW(EmbeddingCtx(2, 0)); // rational-only context
}

TEST_CASE("concurrent embedding queries agree with sequential ones") {
    EmbeddingCtx ctx(2, 17);
    QuadElem alpha = quad(-49, 64, 9, 64, 17);
    std::vector<long> vals(16, 0);
    std::vector<std::thread> pool;
    for (int t = 0; t < 16; ++t)
        pool.emplace_back([&, t] { vals[t] = vp_embed(alpha, ctx).value(); });
    for (auto& t : pool) t.join();
    for (long v : vals) CHECK(v == 3);
}
