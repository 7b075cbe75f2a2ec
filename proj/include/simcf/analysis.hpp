#pragma once

#include <string>
#include <vector>

#include "simcf/cf.hpp"

namespace simcf {

// Arbitrary-precision real scratch value (MPFR, 256-bit mantissa:
// comfortably past the 50 decimal digits the reports render).
class Real {
public:
    Real();
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(Real o);
    ~Real();

    static Real of(const BigRat& q);
    static Real of(long v);
    static Real of_quad(const QuadElem& x); // real embedding, sqrt(d) > 0

    Real operator+(const Real& o) const;
    Real operator-(const Real& o) const;
    Real operator*(const Real& o) const;
    Real operator/(const Real& o) const;
    Real abs() const;
    Real sqrt() const;
    Real log() const;
    Real exp() const;

    int cmp(const Real& o) const;
    double to_double() const;
    std::string str(int digits = 50) const;

    void* raw() { return v_; }
    const void* raw() const { return v_; }

private:
    void* v_; // mpfr_t behind an opaque pointer to keep mpfr.h out of the headers
};

// log of the real-embedding magnitude, safe against the catastrophic
// cancellation of nearly-vanishing a + b sqrt(d): routed through the
// exact norm when the two terms have opposite signs.
Real log_abs_quad(const QuadElem& x);

// Exact v_p(sigma_p(alpha) - p_n/q_n).  ZeroResidual when the expansion
// has already terminated on alpha itself.
long residual_vp(const QuadElem& alpha, const ConvergentSeq& conv, long n,
                 const EmbeddingCtx& ctx);

// Real-side bound |alpha - p_n/q_n| < 2/((1+tau(n)) q_n^2), plus the
// coarse |alpha - p_n/q_n| < 1.  Exact sign tests.
bool residual_real_bound_check(const QuadElem& alpha, const ConvergentSeq& conv, long n);

// Two-sided product |alpha - p'/q'| * |alpha - p'/q'|_2 < 1/q'^2; the
// 2-adic factor is the exact power of two from residual_vp.
bool product_bound_check(const QuadElem& alpha, const ConvergentSeq& conv, long n,
                         const EmbeddingCtx& ctx);

// Sharper upper bound 2 / ((1+tau(n)) |a_{n+1}|_2 q'^2).
bool product_bound_sharp_check(const QuadElem& alpha, const Expansion& exp,
                               const ConvergentSeq& conv, long n, const EmbeddingCtx& ctx);

// Simultaneous approximation exponents from one period of digits:
// gamma_real + gamma_padic = 2 by construction.
struct ExponentSummary {
    double gamma = 0;
    double gamma_real = 0;
    double gamma_padic = 0;
    BigRat trace;            // trace of the period matrix
    BigRat xi;               // p^(-sum of digit valuations) over the period
    std::string lambda_abs;  // |dominant eigenvalue| to 50 digits
    double lambda_abs_dbl = 0;
    bool empirical = false;  // true for p != 2, where no theorem backs it
};

ExponentSummary gamma_exponents(const Expansion& exp, const EmbeddingCtx& ctx);

// Same, but over an arbitrary rotation of the period digits.
ExponentSummary gamma_exponents_rotated(const Expansion& exp, const EmbeddingCtx& ctx,
                                        long rotation);

// Per-n exponent inequalities |alpha - p'/q'| <= C/q'^(2-2gamma) and
// |alpha - p'/q'|_2 <= C'/q'^(2gamma), with C, C' frozen as the maxima
// over the first two periods.  256-bit arithmetic decides the
// comparisons (the exponents are irrational).
struct ExponentBoundReport {
    bool pass = true;
    long first_fail = -1;
    double frozen_real_log = 0;  // log C
    double frozen_padic_log = 0; // log C'
};

ExponentBoundReport exponent_bound_check(const QuadElem& alpha, const Expansion& exp,
                                         const EmbeddingCtx& ctx, long upto_n);

// Least-squares slope of the residual decay for truncated orbits.
// This is a data fit, not a theorem-backed exponent.
struct EmpiricalFit {
    double gamma_real = 0;
    double gamma_padic = 0;
    long points = 0;
};

EmpiricalFit empirical_exponent_fit(const QuadElem& alpha, const Expansion& exp,
                                    const EmbeddingCtx& ctx, long upto_n);

// 2-adic quality constant for periodic imaginary-quadratic expansions:
// max of |residual|_2 * max(|p'|,|q'|)^2 over the first two periods.
BigRat complex_quality_constant(const QuadElem& alpha, const Expansion& exp,
                                const EmbeddingCtx& ctx);

// |alpha - p'_n/q'_n|_2 <= C / max(|p'_n|,|q'_n|)^2 with the constant above.
bool complex_quality_check(const QuadElem& alpha, const Expansion& exp,
                           const ConvergentSeq& conv, long n, const EmbeddingCtx& ctx,
                           const BigRat& constant);

// One verified lemma-style invariant: pass/fail with the first failing
// step when applicable.
struct InvariantCheck {
    std::string name;
    bool applicable = false;
    bool pass = true;
    long first_fail = -1;
    std::string detail;
};

struct InvariantReport {
    std::vector<InvariantCheck> checks;
    ExpStatus status = ExpStatus::Truncated;
    std::string rendered; // expansion rendering, for the CLI
    long steps = 0;

    bool all_pass() const {
        for (const auto& c : checks)
            if (c.applicable && !c.pass) return false;
        return true;
    }
};

// Runs every assertable invariant along the first N steps of the
// expansion of alpha.  Failures are reported, not thrown.
InvariantReport verify_invariants(const QuadElem& alpha, const EmbeddingCtx& ctx, long N);

// Per-convergent residual measurements plus the exponent summary.
struct QualityRow {
    long n = 0;
    mpz_class q_red;
    long padic_residual_vp = 0;        // v_p(alpha - p_n/q_n)
    std::string real_residual_lo;      // |alpha - p_n/q_n| rounded down
    std::string real_residual_hi;      // ... rounded up
    bool real_bound_ok = true;         // 2/((1+tau) q^2) bound (p = 2)
    bool product_bound_ok = true;      // 1/q'^2 product bound (p = 2)
};

struct QualityReport {
    std::vector<QualityRow> rows;
    ExponentSummary summary;
    bool has_summary = false;
};

QualityReport quality_report(const QuadElem& alpha, const Expansion& exp,
                             const EmbeddingCtx& ctx, long upto_n);

} // namespace simcf
