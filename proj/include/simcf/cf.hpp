#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simcf/embedding.hpp"

namespace simcf {

// Partial quotients live in Z[1/p]: lowest-terms rationals whose
// denominator is a power of p.
using PartialQuotient = BigRat;

enum class ExpStatus { Finite, Periodic, Truncated };

// One full expansion run: digits b_0, b_1, ..., the visited states
// alpha_0, alpha_1, ... (aligned index-for-index), and how it ended.
struct Expansion {
    std::vector<PartialQuotient> digits;
    std::vector<QuadElem> states;
    ExpStatus status = ExpStatus::Truncated;
    long preperiod = 0;  // Periodic: states[preperiod] recurs
    long period = 0;     // Periodic: even recurrence distance
    long max_steps = 0;  // Truncated: the step budget that ran out

    bool periodic() const { return status == ExpStatus::Periodic; }
    bool finite() const { return status == ExpStatus::Finite; }

    // b_k, unrolling the period for k past the stored digits.
    const PartialQuotient& digit_at(long k) const;

    // The digits of one period, starting at the preperiod boundary.
    std::vector<PartialQuotient> period_digits() const;
};

// The digit emitted at a given parity: the p-adic floor plus the integer
// multiple of step = p (parity 0) or 1 (parity 1) nearest to the real
// embedding, ties to the smaller multiple.
PartialQuotient digit(const QuadElem& alpha, int parity, const EmbeddingCtx& ctx);

// One step of the expansion: emitted digit plus the next state, or
// nullopt when alpha equals its digit exactly (the expansion halts).
std::pair<PartialQuotient, std::optional<QuadElem>> step(const QuadElem& alpha, int parity,
                                                         const EmbeddingCtx& ctx);

// Runs the expansion with parity n mod 2 from n = 0, detecting the
// first recurrence of (state, parity).  Detected periods are even and
// minimal, with the smallest preperiod.
Expansion expand(const QuadElem& alpha, const EmbeddingCtx& ctx, long max_steps);

// Normalized starting set of the Gauss-map form: real part within
// (-p/2, p/2] and positive valuation of the embedded element.
bool in_fundamental_domain(const QuadElem& alpha, const EmbeddingCtx& ctx);

// Gauss-map step: digit of 1/alpha at the given parity, next state
// 1/alpha - digit (zero next state means the orbit terminates).
std::pair<PartialQuotient, QuadElem> gauss_step(const QuadElem& alpha, int parity,
                                                const EmbeddingCtx& ctx);

// Pair state of the natural-extension map; an absent second coordinate
// is the point at infinity (1/inf = 0), legal only as a start.
struct PairState {
    QuadElem first;
    std::optional<QuadElem> second;

    static PairState at_infinity(const QuadElem& a) { return {a, std::nullopt}; }
};

// Skew product: Gauss-map step on the first coordinate, and the same
// digit subtracted from the inverted second coordinate.
PairState skew_step(const PairState& pair, int parity, const EmbeddingCtx& ctx);

// Valuation-pattern domains: eps selects (v(x) >= 0, v(y) < 0) or
// (v(x) > 0, v(y) <= 0).  Coordinates must be nonzero.
bool in_padic_domain(const PairState& pair, int eps, const EmbeddingCtx& ctx);

// Absolute-value domains |x| <= bound, |x - y| > bound with bound 1/2
// (eps 0) or 1 (eps 1); infinite second coordinate always separates.
// Real-quadratic fields only.
bool in_real_domain(const PairState& pair, int eps);

// Convergents p_n/q_n of an expansion, with the reduced coprime integer
// forms p'_n (sign-carrying) and q'_n > 0.
struct ConvergentSeq {
    std::vector<BigRat> p, q;           // index n = 0 .. upto
    std::vector<mpz_class> p_red, q_red;

    long size() const { return static_cast<long>(p.size()); }
};

ConvergentSeq convergents(const Expansion& exp, long upto_n);

// "[b0; d1, d2, (t1, t2)]" with the period parenthesized; truncated
// expansions end with an ellipsis.
std::string render_expansion(const Expansion& exp);

} // namespace simcf
