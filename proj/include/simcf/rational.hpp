#pragma once

#include <gmpxx.h>

#include <utility>

#include "simcf/errors.hpp"

namespace simcf {

// Reduced arbitrary-precision rational with positive denominator.
// mpq_class already maintains exactly this canonical form.
using BigRat = mpq_class;

// p-adic valuation; the zero element gets the distinguished infinite value.
class Valuation {
public:
    static Valuation infinity() { return Valuation(true, 0); }
    static Valuation finite(long v) { return Valuation(false, v); }

    bool is_infinite() const { return infinite_; }
    long value() const {
        if (infinite_) throw Error("valuation of zero has no finite value");
        return v_;
    }

    friend bool operator==(const Valuation& x, const Valuation& y) {
        return x.infinite_ == y.infinite_ && (x.infinite_ || x.v_ == y.v_);
    }
    friend bool operator!=(const Valuation& x, const Valuation& y) { return !(x == y); }

    // Infinity dominates every finite valuation.
    friend bool operator<(const Valuation& x, const Valuation& y) {
        if (x.infinite_) return false;
        if (y.infinite_) return true;
        return x.v_ < y.v_;
    }
    friend bool operator>(const Valuation& x, const Valuation& y) { return y < x; }
    friend bool operator<=(const Valuation& x, const Valuation& y) { return !(y < x); }
    friend bool operator>=(const Valuation& x, const Valuation& y) { return !(x < y); }

    Valuation operator+(const Valuation& o) const {
        if (infinite_ || o.infinite_) return infinity();
        return finite(v_ + o.v_);
    }

private:
    Valuation(bool inf, long v) : infinite_(inf), v_(v) {}
    bool infinite_;
    long v_;
};

// Multiplicity of p in a nonzero integer.
long vp_int(const mpz_class& n, const mpz_class& p);

// v_p(num) - v_p(den); infinite only for x = 0.
Valuation vp_rational(const BigRat& x, const mpz_class& p);

// Inverse of a modulo m >= 2, in [1, m).
mpz_class mod_inverse(const mpz_class& a, const mpz_class& m);

// Exact floor of the square root of a nonnegative integer.
mpz_class int_sqrt_floor(const mpz_class& n);

// Writes n = f^2 * d with d squarefree (d carries the sign of n).
// Requires n != 0.  Factors by trial division.
std::pair<mpz_class, mpz_class> squarefree_split(const mpz_class& n);

// p^k for k >= 0.
mpz_class pow_p(const mpz_class& p, long k);

// Residue in [0, m) of a rational whose denominator is coprime to m.
mpz_class residue_mod(const BigRat& q, const mpz_class& m);

// p^v as an exact rational, v of either sign.
BigRat rat_pow_p(const mpz_class& p, long v);

} // namespace simcf
