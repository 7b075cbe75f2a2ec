#pragma once

#include "simcf/rational.hpp"

namespace simcf {

// Identifies one of the two p-adic square roots of d.
// For odd p the residue is taken mod p; for p = 2 it is taken mod 8.
struct RootSelect {
    mpz_class residue;
};

// Root matching the published tables: for p = 2 the root congruent to
// 1 mod 4 (residue 1 when d = 1 mod 16, residue 5 when d = 9 mod 16);
// for odd p the smallest positive residue whose square is d mod p.
RootSelect default_root_select(const mpz_class& d, const mpz_class& p);

// The residue mod p (odd) / mod 8 (p = 2) of the other root, -s.
RootSelect opposite_root_select(const RootSelect& sel, const mpz_class& p);

// Checks that sqrt(d) exists in Q_p: for odd p, p does not divide d and
// d is a quadratic residue; for p = 2, d = 1 mod 8.  Throws NotASquare.
void require_padic_square(const mpz_class& d, const mpz_class& p);

// s in [0, p^k) with s^2 = d mod p^k, on the branch named by select.
// Successive precisions agree mod p^k for odd p and mod 2^(k-1) for p = 2.
mpz_class hensel_sqrt(const mpz_class& d, const mpz_class& p, const RootSelect& select, long k);

// Incremental lifter behind hensel_sqrt; callers that need many
// precisions keep one around and extend it monotonically.
class HenselLifter {
public:
    HenselLifter(const mpz_class& d, const mpz_class& p, const RootSelect& select);

    // s^2 = d mod p^k on the selected branch.
    mpz_class root_mod(long k);

    // The true p-adic root reduced mod p^k (one extra lifted digit is
    // used for p = 2, where the top digit of root_mod(k) is provisional).
    mpz_class stable_root_mod(long k);

    const mpz_class& d() const { return d_; }
    const mpz_class& p() const { return p_; }
    const RootSelect& select() const { return select_; }

private:
    void extend_to(long k);

    mpz_class d_, p_;
    RootSelect select_;
    mpz_class x_;   // current approximation, x_^2 = d mod p^prec_
    long prec_;
};

} // namespace simcf
