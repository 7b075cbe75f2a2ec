#include "simcf/quad.hpp"

#include <string>

namespace simcf {

QuadElem QuadElem::make(const BigRat& a, const BigRat& b, const mpz_class& n_raw) {
    if (b == 0) return QuadElem(a);
    if (n_raw == 0) throw Error("QuadElem: sqrt(0) with nonzero coefficient");
    auto [f, d] = squarefree_split(n_raw);
    BigRat bb = b * f;
    if (d == 1) return QuadElem(a + bb); // perfect square radicand
    return QuadElem(a, bb, d);
}

QuadElem QuadElem::from_parts(const BigRat& a, const BigRat& b, const mpz_class& d) {
    if (b == 0) return QuadElem(a);
    if (d == 0 || d == 1) throw Error("QuadElem: invalid radicand for irrational element");
    return QuadElem(a, b, d);
}

namespace {

// Radicand shared by two operands; rationals are compatible with anything.
mpz_class common_d(const QuadElem& x, const QuadElem& y) {
    if (x.is_rational()) return y.d();
    if (y.is_rational()) return x.d();
    if (x.d() != y.d())
        throw DomainMismatch("operands live in different quadratic fields (" + x.d().get_str() +
                             " vs " + y.d().get_str() + ")");
    return x.d();
}

} // namespace

QuadElem operator+(const QuadElem& x, const QuadElem& y) {
    mpz_class d = common_d(x, y);
    return QuadElem::from_parts(x.a() + y.a(), x.b() + y.b(), d);
}

QuadElem operator-(const QuadElem& x, const QuadElem& y) {
    mpz_class d = common_d(x, y);
    return QuadElem::from_parts(x.a() - y.a(), x.b() - y.b(), d);
}

QuadElem operator*(const QuadElem& x, const QuadElem& y) {
    mpz_class d = common_d(x, y);
    BigRat a = x.a() * y.a() + d * x.b() * y.b();
    BigRat b = x.a() * y.b() + x.b() * y.a();
    return QuadElem::from_parts(a, b, d);
}

QuadElem QuadElem::invert() const {
    if (is_zero()) throw DivisionByZero("invert of zero element");
    if (is_rational()) return QuadElem(BigRat(1) / a_);
    BigRat n = norm(); // nonzero: sqrt(d) is irrational
    return from_parts(a_ / n, -b_ / n, d_);
}

int sign_real(const QuadElem& x) {
    if (x.d() < 0 || x.is_rational()) return sgn(x.a());
    int sa = sgn(x.a());
    int sb = sgn(x.b());
    if (sa == 0) return sb;
    if (sb == 0) return sa;
    if (sa == sb) return sa;
    // Opposite signs: the larger magnitude wins; a^2 = d b^2 cannot
    // happen for squarefree d > 1.
    int c = cmp(x.a() * x.a(), BigRat(x.d()) * x.b() * x.b());
    return c > 0 ? sa : sb;
}

namespace {

// Sign of B*sqrt(d) - E for integers B != 0, E, and squarefree d > 1.
int cmp_root_multiple(const mpz_class& B, const mpz_class& d, const mpz_class& E) {
    int sb = sgn(B);
    int se = sgn(E);
    if (sb > 0 && se <= 0) return 1;
    if (sb < 0 && se >= 0) return -1;
    // Same nonzero sign: compare squares, orientation by that sign.
    int c = cmp(B * B * d, E * E);
    return sb > 0 ? c : -c;
}

} // namespace

mpz_class floor_real(const QuadElem& x) {
    if (x.is_rational()) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), x.a().get_num().get_mpz_t(), x.a().get_den().get_mpz_t());
        return q;
    }
    if (x.d() < 0) throw ImaginaryFieldUnsupported("floor_real: complex embedding");
    // x = (A + B*sqrt(d))/C with C > 0.
    mpz_class C;
    mpz_lcm(C.get_mpz_t(), x.a().get_den().get_mpz_t(), x.b().get_den().get_mpz_t());
    mpz_class A = x.a().get_num() * (C / x.a().get_den());
    mpz_class B = x.b().get_num() * (C / x.b().get_den());
    // Integer bracket L <= B*sqrt(d) < L + 1 (strict: B*sqrt(d) irrational).
    mpz_class L = int_sqrt_floor(B * B * x.d());
    if (B < 0) L = -L - 1;
    mpz_class g;
    mpz_class AL = A + L;
    mpz_fdiv_q(g.get_mpz_t(), AL.get_mpz_t(), C.get_mpz_t());
    // x lies in ((A+L)/C, (A+L+1)/C); floor is g unless x >= g+1.
    mpz_class E = C * (g + 1) - A;
    if (cmp_root_multiple(B, x.d(), E) > 0) return g + 1;
    return g;
}

mpz_class nearest_step_index(const QuadElem& x, const BigRat& c, const mpz_class& step) {
    if (step <= 0) throw Error("nearest_step_index: step must be positive");
    QuadElem real_part = (x.d() < 0) ? QuadElem(x.a()) : x;
    // m = ceil((X - c)/step - 1/2); ties resolve to the smaller index,
    // leaving the residual in (-step/2, step/2].
    QuadElem z = (real_part - QuadElem(c)) * QuadElem(BigRat(mpz_class(1), step)) -
                 QuadElem(BigRat(1, 2));
    if (z.is_rational()) {
        mpz_class m;
        mpz_cdiv_q(m.get_mpz_t(), z.a().get_num().get_mpz_t(), z.a().get_den().get_mpz_t());
        return m;
    }
    return floor_real(z) + 1;
}

std::string to_string(const QuadElem& x) {
    if (x.is_rational()) return x.a().get_str();
    std::string root = "sqrt(" + x.d().get_str() + ")";
    std::string radical;
    if (x.b() == 1)
        radical = root;
    else if (x.b() == -1)
        radical = "-" + root;
    else
        radical = x.b().get_str() + "*" + root;
    if (x.a() == 0) return radical;
    std::string sep = (sgn(x.b()) < 0) ? " - " : " + ";
    std::string babs = abs(x.b()) == 1 ? root : BigRat(abs(x.b())).get_str() + "*" + root;
    return x.a().get_str() + sep + babs;
}

} // namespace simcf
