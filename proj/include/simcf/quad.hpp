#pragma once

#include "simcf/rational.hpp"

namespace simcf {

// Element a + b*sqrt(d) of a quadratic field, exact.  Rational values are
// canonicalized to b = 0, d = 0, so equality is plain field comparison.
// When b != 0, d is squarefree and neither 0 nor 1 (negative d allowed).
class QuadElem {
public:
    QuadElem() : a_(0), b_(0), d_(0) {}
    QuadElem(const BigRat& r) : a_(r), b_(0), d_(0) {}
    QuadElem(long r) : a_(r), b_(0), d_(0) {}

    // a + b*sqrt(n_raw); folds the square part of n_raw into b.
    static QuadElem make(const BigRat& a, const BigRat& b, const mpz_class& n_raw);

    // Trusted constructor: d already squarefree (or 0 with b = 0).
    static QuadElem from_parts(const BigRat& a, const BigRat& b, const mpz_class& d);

    const BigRat& a() const { return a_; }
    const BigRat& b() const { return b_; }
    const mpz_class& d() const { return d_; }

    bool is_zero() const { return b_ == 0 && a_ == 0; }
    bool is_rational() const { return b_ == 0; }

    QuadElem conjugate() const { return from_parts(a_, -b_, b_ == 0 ? mpz_class(0) : d_); }
    BigRat norm() const { return a_ * a_ - d_ * b_ * b_; }

    QuadElem operator-() const { return from_parts(-a_, -b_, b_ == 0 ? mpz_class(0) : d_); }
    friend QuadElem operator+(const QuadElem& x, const QuadElem& y);
    friend QuadElem operator-(const QuadElem& x, const QuadElem& y);
    friend QuadElem operator*(const QuadElem& x, const QuadElem& y);
    QuadElem invert() const;

    friend bool operator==(const QuadElem& x, const QuadElem& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
    }
    friend bool operator!=(const QuadElem& x, const QuadElem& y) { return !(x == y); }

    // Total order for use as an ordered-map key.
    friend bool operator<(const QuadElem& x, const QuadElem& y) {
        int c = cmp(x.a_, y.a_);
        if (c != 0) return c < 0;
        c = cmp(x.b_, y.b_);
        if (c != 0) return c < 0;
        return cmp(x.d_, y.d_) < 0;
    }

private:
    QuadElem(const BigRat& a, const BigRat& b, const mpz_class& d) : a_(a), b_(b), d_(d) {}

    BigRat a_, b_;
    mpz_class d_;
};

// Exact sign of the real embedding (real part when d < 0), with the
// branch convention sqrt(d) > 0.  Never touches floating point.
int sign_real(const QuadElem& x);

// Exact floor of the real embedding; requires d >= 0 or a rational value.
mpz_class floor_real(const QuadElem& x);

// Smallest integer m minimizing |X - c - m*step| where X is the real
// embedding of x (real part for d < 0).  The residual X - c - m*step
// then lies in (-step/2, step/2].
mpz_class nearest_step_index(const QuadElem& x, const BigRat& c, const mpz_class& step);

// Renders "a + b*sqrt(d)" in the expression grammar accepted by parse().
std::string to_string(const QuadElem& x);

} // namespace simcf
