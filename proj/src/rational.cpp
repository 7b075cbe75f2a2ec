#include "simcf/rational.hpp"

namespace simcf {

long vp_int(const mpz_class& n, const mpz_class& p) {
    if (n == 0) throw Error("vp_int: zero input");
    mpz_class reduced;
    return static_cast<long>(mpz_remove(reduced.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

Valuation vp_rational(const BigRat& x, const mpz_class& p) {
    if (x == 0) return Valuation::infinity();
    return Valuation::finite(vp_int(x.get_num(), p) - vp_int(x.get_den(), p));
}

mpz_class mod_inverse(const mpz_class& a, const mpz_class& m) {
    if (m < 2) throw Error("mod_inverse: modulus must be >= 2");
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw NotInvertible("mod_inverse: gcd(a, m) != 1");
    return r;
}

mpz_class int_sqrt_floor(const mpz_class& n) {
    if (n < 0) throw NegativeInput("int_sqrt_floor: negative input");
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::pair<mpz_class, mpz_class> squarefree_split(const mpz_class& n) {
    if (n == 0) throw Error("squarefree_split: zero input");
    mpz_class rest = abs(n);
    mpz_class f = 1, d = 1;
    for (mpz_class i = 2; i * i <= rest; ++i) {
        if (rest % i != 0) continue;
        long e = 0;
        while (rest % i == 0) {
            rest /= i;
            ++e;
        }
        if (e & 1) d *= i;
        mpz_class half;
        mpz_pow_ui(half.get_mpz_t(), i.get_mpz_t(), static_cast<unsigned long>(e / 2));
        f *= half;
    }
    d *= rest; // leftover prime (or 1)
    if (n < 0) d = -d;
    return {f, d};
}

mpz_class pow_p(const mpz_class& p, long k) {
    if (k < 0) throw Error("pow_p: negative exponent");
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

mpz_class residue_mod(const BigRat& q, const mpz_class& m) {
    mpz_class num = q.get_num() % m;
    if (num < 0) num += m;
    if (q.get_den() == 1) return num;
    mpz_class inv = mod_inverse(q.get_den(), m);
    return mpz_class(num * inv % m);
}

BigRat rat_pow_p(const mpz_class& p, long v) {
    if (v >= 0) return BigRat(pow_p(p, v));
    return BigRat(1, pow_p(p, -v));
}

} // namespace simcf
