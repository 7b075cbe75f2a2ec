#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "simcf/parser.hpp"

using namespace simcf;
using namespace simcf::testing;

namespace {

std::vector<BigRat> digits_of(const Expansion& e) { return e.digits; }

std::vector<BigRat> rats(std::initializer_list<const char*> xs) {
    std::vector<BigRat> out;
    for (const char* x : xs) out.emplace_back(x);
    return out;
}

} // namespace

TEST_CASE("digit and step reproduce the worked rational example") {
    EmbeddingCtx c2(2, 0), c5(5, 0), c7(7, 0);
    QuadElem a(rat(5, 13));

    CHECK(digit(a, 0, c2) == rat(1));
    CHECK(digit(QuadElem(rat(-13, 8)), 1, c2) == rat(-13, 8));
    CHECK(digit(a, 0, c5) == rat(0));

    auto [b0, next0] = step(a, 0, c2);
    CHECK(b0 == rat(1));
    REQUIRE(next0.has_value());
    CHECK(*next0 == QuadElem(rat(-13, 8)));

    auto [b1, next1] = step(*next0, 1, c2);
    CHECK(b1 == rat(-13, 8));
    CHECK(!next1.has_value());

    auto [b7, next7] = step(a, 0, c7);
    CHECK(b7 == rat(2));
    REQUIRE(next7.has_value());
    CHECK(*next7 == QuadElem(rat(-13, 21)));
}

TEST_CASE("expansions of 5/13 for the four worked primes") {
    QuadElem a(rat(5, 13));
    struct Case {
        long p;
        std::vector<BigRat> digits;
        const char* rendered;
    };
    const Case cases[] = {
        {2, rats({"1", "-13/8"}), "[1; -13/8]"},
        {3, rats({"-1", "2/9", "2"}), "[-1; 2/9, 2]"},
        {5, rats({"0", "13/5"}), "[0; 13/5]"},
        {7, rats({"2", "-2/7", "-3"}), "[2; -2/7, -3]"},
    };
    for (const auto& c : cases) {
        EmbeddingCtx ctx(c.p, 0);
        Expansion e = expand(a, ctx, 100);
        CHECK(e.finite());
        CHECK(digits_of(e) == c.digits);
        CHECK(render_expansion(e) == c.rendered);
    }
}

TEST_CASE("sqrt(17) expansion at p = 2") {
    EmbeddingCtx ctx(2, 17, RootSelect{1});
    Expansion e = expand(sqrt_of(17), ctx, 100);
    REQUIRE(e.periodic());
    CHECK(e.preperiod == 3);
    CHECK(e.period == 2);
    CHECK(digits_of(e) == rats({"5", "-3/4", "-3", "5/2", "-5"}));
    CHECK(render_expansion(e) == "[5; -3/4, -3, (5/2, -5)]");
}

TEST_CASE("quadratic worked example at p = 7") {
    ElementSpec spec = parse("(17 + sqrt(37))/10 ; residue 2 mod 7");
    auto sel = resolve_root_select(spec, 7);
    REQUIRE(sel.has_value());
    CHECK(sel->residue == 3);
    EmbeddingCtx ctx(7, 37, *sel);
    Expansion e = expand(spec.element, ctx, 100);
    REQUIRE(e.periodic());
    CHECK(e.preperiod == 2);
    CHECK(e.period == 8);
    CHECK(digits_of(e) ==
          rats({"2", "22/7", "12", "-2/7", "-5", "-29/7", "-12", "2/7", "5", "29/7"}));
}

TEST_CASE("the remark examples at p = 2") {
    // 2 sqrt(17) - 8 with root residue 2 mod 8 on the element.
    ElementSpec spec = parse("2*sqrt(17) - 8 ; residue 2 mod 8");
    auto sel = resolve_root_select(spec, 2);
    REQUIRE(sel.has_value());
    CHECK(sel->residue == 1); // the 1-mod-4 branch makes 2s - 8 = 2 mod 8
    EmbeddingCtx ctx(2, 17, *sel);
    Expansion e = expand(spec.element, ctx, 100);
    REQUIRE(e.periodic());
    CHECK(e.preperiod == 4);
    CHECK(e.period == 2);
    CHECK(digits_of(e) == rats({"0", "9/2", "-3/2", "-3/2", "5", "-5/2"}));
    CHECK(render_expansion(e) == "[0; 9/2, -3/2, -3/2, (5, -5/2)]");

    // -49/64 + (9/64) sqrt(17), root = 1 mod 8.
    QuadElem alpha = quad(-49, 64, 9, 64, 17);
    EmbeddingCtx ctx2(2, 17, RootSelect{1});
    Expansion e2 = expand(alpha, ctx2, 100);
    REQUIRE(e2.periodic());
    CHECK(e2.preperiod == 2);
    CHECK(e2.period == 8);
    CHECK(digits_of(e2) ==
          rats({"0", "-41/8", "-3", "-3/2", "5/2", "37/4", "-3", "5/4", "-5", "-33/8"}));
}

TEST_CASE("fundamental domain membership") {
    EmbeddingCtx ctx(2, 17, RootSelect{1});
    ElementSpec spec = parse("2*sqrt(17) - 8 ; residue 2 mod 8");
    auto sel = resolve_root_select(spec, 2);
    EmbeddingCtx ctx_sel(2, 17, *sel);
    CHECK(in_fundamental_domain(spec.element, ctx_sel));
    CHECK(!in_fundamental_domain(QuadElem(rat(5, 13)), ctx)); // v_2 = 0
    CHECK(!in_fundamental_domain(sqrt_of(17), ctx));          // real value > 1
    CHECK(in_fundamental_domain(quad(-49, 64, 9, 64, 17), ctx));
}

TEST_CASE("gauss_step tracks the expansion tail on the fundamental domain") {
    ElementSpec spec = parse("2*sqrt(17) - 8 ; residue 2 mod 8");
    auto sel = resolve_root_select(spec, 2);
    EmbeddingCtx ctx(2, 17, *sel);
    Expansion e = expand(spec.element, ctx, 100);

    // Algol-2 style orbit: state alpha_(n), map parity n mod 2 from n = 1.
    QuadElem g = spec.element;
    for (long n = 1; n <= 9; ++n) {
        auto [a, next] = gauss_step(g, static_cast<int>(n & 1), ctx);
        CHECK(a == e.digit_at(n));
        g = next;
    }

    // A rational in the domain terminates.
    EmbeddingCtx c2(2, 0);
    QuadElem r(rat(6, 13)); // v_2(6/13) = 1 > 0, value in (-1, 1]
    CHECK(in_fundamental_domain(r, c2));
    QuadElem cur = r;
    bool terminated = false;
    for (long n = 1; n <= 50; ++n) {
        auto [a, next] = gauss_step(cur, static_cast<int>(n & 1), c2);
        if (next.is_zero()) {
            terminated = true;
            break;
        }
        cur = next;
    }
    CHECK(terminated);

    // alpha = 1: 1/alpha = 1, digit 1 at odd parity, next state 0.
    auto [a1, next1] = gauss_step(QuadElem(rat(1)), 1, c2);
    CHECK(a1 == rat(1));
    CHECK(next1.is_zero());
    CHECK_THROWS_AS(gauss_step(QuadElem(rat(0)), 0, c2), DivisionByZero);
}

TEST_CASE("skew product: shadow coordinates") {
    EmbeddingCtx ctx(2, 17, RootSelect{1});
    QuadElem alpha = quad(-49, 64, 9, 64, 17);

    // Starting at infinity: after n steps the second coordinate is
    // minus the reversed continued fraction of the digits emitted.
    Expansion e = expand(alpha, ctx, 40);
    PairState pair = PairState::at_infinity(alpha);
    std::vector<BigRat> emitted;
    for (long n = 1; n <= 10; ++n) {
        auto [a, unused] = gauss_step(pair.first, static_cast<int>(n & 1), ctx);
        emitted.push_back(a);
        pair = skew_step(pair, static_cast<int>(n & 1), ctx);
        // -[a_n; a_{n-1}, ..., a_1] evaluated inside out.
        QuadElem expect(emitted[0]);
        for (size_t k = 1; k < emitted.size(); ++k)
            expect = QuadElem(emitted[k]) + expect.invert();
        REQUIRE(pair.second.has_value());
        CHECK(*pair.second == -expect);
    }

    // Conjugate shadow stays conjugate.
    PairState cpair{alpha, alpha.conjugate()};
    for (long n = 1; n <= 12; ++n) {
        cpair = skew_step(cpair, static_cast<int>(n & 1), ctx);
        REQUIRE(cpair.second.has_value());
        CHECK(*cpair.second == cpair.first.conjugate());
    }

    // Convergent shadow dies at step n+1.
    long n = 7;
    ConvergentSeq conv = convergents(e, n);
    PairState vpair{alpha, QuadElem(conv.p[n] / conv.q[n])};
    for (long k = 1; k <= n; ++k) vpair = skew_step(vpair, static_cast<int>(k & 1), ctx);
    REQUIRE(vpair.second.has_value());
    CHECK(vpair.second->is_zero());
}

TEST_CASE("valuation and absolute-value domains") {
    EmbeddingCtx ctx(2, 17, RootSelect{1});
    QuadElem alpha = quad(-49, 64, 9, 64, 17);
    PairState pair{alpha, alpha.conjugate()};
    CHECK(in_padic_domain(pair, 1, ctx));
    CHECK(in_real_domain(pair, 1));
    // The eps variants overlap: v = 3 / -5 satisfies both patterns.
    CHECK(in_padic_domain(pair, 0, ctx));

    // v(x) = v(y) = 0 fails both eps variants.
    PairState flat{sqrt_of(17), sqrt_of(17) + QuadElem(rat(2))};
    CHECK(!in_padic_domain(flat, 1, ctx));

    PairState same{QuadElem(rat(1, 4)), QuadElem(rat(1, 4))};
    CHECK(!in_real_domain(same, 0)); // |x - y| = 0

    PairState inf_pair = PairState::at_infinity(QuadElem(rat(1, 4)));
    CHECK(in_real_domain(inf_pair, 0));
    CHECK(in_real_domain(inf_pair, 1));
}

TEST_CASE("domain transitions under the skew product") {
    // Random pairs in the source domain land in the image domain.
    EmbeddingCtx ctx(2, 17, RootSelect{1});
    int checked_p0 = 0, checked_p1 = 0, checked_r0 = 0, checked_r1 = 0;
    for (int iter = 0; iter < 4000 && (checked_p0 < 40 || checked_p1 < 40 || checked_r0 < 40 ||
                                       checked_r1 < 40);
         ++iter) {
        QuadElem x = QuadElem::make(random_rat(20, 16), random_rat(20, 16), 17);
        QuadElem y = QuadElem::make(random_rat(20, 16), random_rat(20, 16), 17);
        if (x.is_rational() || y.is_zero()) continue;
        PairState pair{x, y};
        for (int eps : {0, 1}) {
            if (in_padic_domain(pair, eps, ctx)) {
                PairState img = skew_step(pair, eps, ctx);
                CHECK(in_padic_domain(img, 1 - eps, ctx));
                (eps == 0 ? checked_p0 : checked_p1)++;
            }
            if (in_real_domain(pair, eps)) {
                PairState img = skew_step(pair, eps, ctx);
                CHECK(in_real_domain(img, 1 - eps));
                (eps == 0 ? checked_r0 : checked_r1)++;
            }
        }
    }
    CHECK(checked_p0 > 0);
    CHECK(checked_p1 > 0);
    CHECK(checked_r0 > 0);
    CHECK(checked_r1 > 0);
}

TEST_CASE("convergents: recurrence, reduction, and identities") {
    EmbeddingCtx ctx(2, 0);
    Expansion e = expand(QuadElem(rat(5, 13)), ctx, 10);
    ConvergentSeq conv = convergents(e, 1);
    CHECK(conv.p[1] / conv.q[1] == rat(5, 13));
    CHECK(conv.p_red[1] == 5);
    CHECK(conv.q_red[1] == 13);

    EmbeddingCtx ctx17(2, 17, RootSelect{1});
    Expansion e17 = expand(sqrt_of(17), ctx17, 60);
    long upto = 24;
    ConvergentSeq c17 = convergents(e17, upto);
    long vsum = 0;
    for (long n = 1; n <= upto; ++n) {
        // Denominator valuation accumulates digit valuations.
        vsum += vp_rational(e17.digit_at(n), 2).value();
        CHECK(vp_rational(c17.q[n], 2) == Valuation::finite(vsum));
        CHECK(c17.q[n] != 0);
        // gcd(p', q') = 1, q' > 0, same value.
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), c17.p_red[n].get_mpz_t(), c17.q_red[n].get_mpz_t());
        CHECK(g == 1);
        CHECK(c17.q_red[n] > 0);
        CHECK(BigRat(c17.p_red[n]) / BigRat(c17.q_red[n]) == c17.p[n] / c17.q[n]);
        // 2-adic convergence: v_2(sqrt(17) - p_n/q_n) >= n.
        QuadElem diff = sqrt_of(17) - QuadElem(c17.p[n] / c17.q[n]);
        CHECK(vp_embed(diff, ctx17).value() >= n);
        // q_{n-1}/q_n = [0; a_n, ..., a_1], innermost digit a_1.
        QuadElem back(rat(0));
        for (long k = 1; k <= n; ++k) back = (QuadElem(e17.digit_at(k)) + back).invert();
        CHECK(back == QuadElem(c17.q[n - 1] / c17.q[n]));
    }
}

TEST_CASE("rational inputs terminate and reproduce their value") {
    const long ps[] = {2, 3, 5, 7};
    for (long p : ps) {
        EmbeddingCtx ctx(p, 0);
        for (int iter = 0; iter < 150; ++iter) {
            BigRat v = random_rat(999, 999);
            Expansion e = expand(QuadElem(v), ctx, 500);
            REQUIRE(e.finite());
            long last = static_cast<long>(e.digits.size()) - 1;
            ConvergentSeq conv = convergents(e, last);
            CHECK(conv.p[last] / conv.q[last] == v);
        }
    }
}

TEST_CASE("periodic status is genuine") {
    const long ds[] = {17, 33, 41, 65, -7, -15};
    for (long dn : ds) {
        QuadElem x = sqrt_of(dn);
        EmbeddingCtx ctx(2, x.d());
        Expansion e = expand(x, ctx, 400);
        REQUIRE(e.periodic());
        CHECK(e.period % 2 == 0);
        QuadElem cur = e.states[e.preperiod];
        for (long k = 0; k < 2 * e.period; ++k) {
            long n = e.preperiod + k;
            auto [b, next] = step(cur, static_cast<int>(n & 1), ctx);
            CHECK(b == e.digit_at(n));
            REQUIRE(next.has_value());
            cur = *next;
        }
        CHECK(cur == e.states[e.preperiod]);
    }
}

TEST_CASE("early odd recurrence implies the eps = 1 domains") {
    // Scan fundamental-domain elements; whenever the detected orbit
    // recurs at index 1, the pair with the conjugate must belong to
    // both domains.  (The converse is allowed to fail.)
    long hits = 0;
    for (long d : radicands_mod8_1(200)) {
        EmbeddingCtx ctx(2, d);
        for (int iter = 0; iter < 25; ++iter) {
            QuadElem alpha = random_fundamental_elem(ctx);
            Expansion e = expand(alpha, ctx, 200);
            if (!e.periodic() || e.preperiod > 1) continue;
            ++hits;
            PairState pair{alpha, alpha.conjugate()};
            CHECK(in_padic_domain(pair, 1, ctx));
            CHECK(in_real_domain(pair, 1));
        }
    }
    CHECK(hits > 0);
}

TEST_CASE("truncation reporting") {
    EmbeddingCtx ctx(2, 17, RootSelect{1});
    Expansion e = expand(sqrt_of(17), ctx, 3); // period needs 5 states
    CHECK(e.status == ExpStatus::Truncated);
    CHECK(e.digits.size() == 3);
    CHECK(render_expansion(e) == "[5; -3/4, -3, ...]");
    CHECK_THROWS_AS(e.period_digits(), NotPeriodic);
}
