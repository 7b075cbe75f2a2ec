#pragma once

#include <random>
#include <vector>

#include "simcf/cf.hpp"

namespace simcf::testing {

inline BigRat rat(long num, long den = 1) {
    BigRat q(num, den);
    q.canonicalize();
    return q;
}

inline QuadElem sqrt_of(long n) { return QuadElem::make(BigRat(0), BigRat(1), n); }

// a/ad + (b/bd) sqrt(n)
inline QuadElem quad(long a, long ad, long b, long bd, long n) {
    return QuadElem::make(rat(a, ad), rat(b, bd), n);
}

// Deterministic RNG so failures reproduce.
inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x5eedcafe);
    return gen;
}

inline long rand_in(long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    return dist(rng());
}

inline BigRat random_rat(long mag, long den_mag) {
    long den = rand_in(1, den_mag);
    return rat(rand_in(-mag, mag), den);
}

// Squarefree radicands with a 2-adic square root, d <= bound.
inline std::vector<long> radicands_mod8_1(long bound) {
    std::vector<long> out;
    for (long d = 17; d <= bound; d += 8) {
        auto [f, sf] = squarefree_split(mpz_class(d));
        if (f == 1 && sf == d) out.push_back(d);
    }
    return out;
}

// A random element with positive valuation and real part in (-1, 1]
// at p = 2: one digit step applied to a random irrational.
inline QuadElem random_fundamental_elem(const EmbeddingCtx& ctx) {
    for (;;) {
        BigRat a = random_rat(8, 6);
        BigRat b = random_rat(8, 6);
        if (b == 0) continue;
        QuadElem x = QuadElem::from_parts(a, b, ctx.d());
        QuadElem shifted = x - QuadElem(digit(x, 0, ctx));
        if (!shifted.is_zero()) return shifted;
    }
}

} // namespace simcf::testing
