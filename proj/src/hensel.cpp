#include "simcf/hensel.hpp"

namespace simcf {

namespace {

mpz_class mod_nonneg(const mpz_class& a, const mpz_class& m) {
    mpz_class r = a % m;
    if (r < 0) r += m;
    return r;
}

} // namespace

void require_padic_square(const mpz_class& d, const mpz_class& p) {
    if (p == 2) {
        if (mod_nonneg(d, 8) != 1)
            throw NotASquare("sqrt(" + d.get_str() + ") does not exist in Q_2 (d != 1 mod 8)");
        return;
    }
    int leg = mpz_legendre(d.get_mpz_t(), p.get_mpz_t());
    if (leg != 1)
        throw NotASquare("sqrt(" + d.get_str() + ") does not exist in Q_" + p.get_str());
}

RootSelect default_root_select(const mpz_class& d, const mpz_class& p) {
    require_padic_square(d, p);
    if (p == 2) {
        // Both roots are odd; exactly one is 1 mod 4.
        return {mod_nonneg(d, 16) == 1 ? mpz_class(1) : mpz_class(5)};
    }
    mpz_class dm = mod_nonneg(d, p);
    for (mpz_class r = 1; r < p; ++r) {
        if (mod_nonneg(r * r, p) == dm) return {r};
    }
    throw NotASquare("no square root of " + d.get_str() + " mod " + p.get_str());
}

RootSelect opposite_root_select(const RootSelect& sel, const mpz_class& p) {
    mpz_class m = (p == 2) ? mpz_class(8) : p;
    return {mod_nonneg(-sel.residue, m)};
}

HenselLifter::HenselLifter(const mpz_class& d, const mpz_class& p, const RootSelect& select)
    : d_(d), p_(p), select_(select) {
    require_padic_square(d, p);
    if (p == 2) {
        mpz_class r = mod_nonneg(select.residue, 8);
        if (r % 2 == 0 || mod_nonneg(r * r - d, 16) != 0)
            throw Error("root selector " + select.residue.get_str() +
                        " does not name a 2-adic root of " + d.get_str());
        x_ = r;
        prec_ = 3;
    } else {
        mpz_class r = mod_nonneg(select.residue, p);
        if (mod_nonneg(r * r - d, p) != 0)
            throw Error("root selector " + select.residue.get_str() +
                        " does not name a root of " + d.get_str() + " mod " + p.get_str());
        x_ = r;
        prec_ = 1;
    }
}

void HenselLifter::extend_to(long k) {
    if (k <= prec_) return;
    if (p_ == 2) {
        // Bit-by-bit lift: from x^2 = d mod 2^m, either x or x + 2^(m-1)
        // satisfies the congruence mod 2^(m+1).
        mpz_class mod = pow_p(p_, prec_);
        while (prec_ < k) {
            mod *= 2;
            if (mod_nonneg(x_ * x_ - d_, mod) != 0) x_ += pow_p(p_, prec_ - 1);
            ++prec_;
        }
    } else {
        // Newton doubling: x -> (x + d/x)/2 mod p^(2m) fixes x mod p^m.
        while (prec_ < k) {
            long next = prec_ * 2;
            mpz_class mod = pow_p(p_, next);
            mpz_class inv_x = mod_inverse(x_, mod);
            mpz_class inv_2 = mod_inverse(2, mod);
            x_ = mod_nonneg((x_ + d_ * inv_x) * inv_2, mod);
            prec_ = next;
        }
    }
}

mpz_class HenselLifter::root_mod(long k) {
    if (k < 1) throw Error("hensel_sqrt: precision must be >= 1");
    extend_to(p_ == 2 ? std::max(k, 3L) : k);
    return mod_nonneg(x_, pow_p(p_, k));
}

mpz_class HenselLifter::stable_root_mod(long k) {
    if (p_ == 2) return mod_nonneg(root_mod(k + 1), pow_p(p_, k));
    return root_mod(k);
}

mpz_class hensel_sqrt(const mpz_class& d, const mpz_class& p, const RootSelect& select, long k) {
    HenselLifter lifter(d, p, select);
    return lifter.root_mod(k);
}

} // namespace simcf
