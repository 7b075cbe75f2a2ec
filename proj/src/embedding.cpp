#include "simcf/embedding.hpp"

#include <algorithm>
#include <cstdlib>

namespace simcf {

long precision_ceiling_floor() {
    static long cached = [] {
        const char* env = std::getenv("SIMCF_PRECISION_CEILING");
        if (!env) return 0L;
        long v = std::atol(env);
        return v > 0 ? v : 0L;
    }();
    return cached;
}

EmbeddingCtx::EmbeddingCtx(const mpz_class& p, const mpz_class& d, std::optional<RootSelect> select)
    : p_(p), d_(d), select_(select) {
    if (mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
        throw Error("embedding prime " + p.get_str() + " is not prime");
    if (d_ == 1) throw Error("radicand 1 is not a valid field discriminant part");
    if (d_ != 0) {
        if (!select_) select_ = default_root_select(d_, p_);
        lifter_ = std::make_unique<HenselLifter>(d_, p_, *select_);
    }
}

EmbeddingCtx::EmbeddingCtx(const EmbeddingCtx& o) : p_(o.p_), d_(o.d_), select_(o.select_) {
    if (d_ != 0) lifter_ = std::make_unique<HenselLifter>(d_, p_, *select_);
}

const RootSelect& EmbeddingCtx::root_select() const {
    if (!select_) throw Error("rational-only context has no root selection");
    return *select_;
}

mpz_class EmbeddingCtx::root_residue(long k) const {
    if (!lifter_) throw Error("rational-only context cannot embed a radical");
    std::lock_guard<std::mutex> lock(mu_);
    return lifter_->stable_root_mod(k);
}

namespace {

// Denominator-clearing exponent: p^j * a and p^j * b are p-integral.
long clearing_exponent(const QuadElem& x, const mpz_class& p) {
    long j = 0;
    if (x.a() != 0) j = std::max(j, -vp_rational(x.a(), p).value());
    if (x.b() != 0) j = std::max(j, -vp_rational(x.b(), p).value());
    return j;
}

// Residue mod p^k of p^j * sigma_p(x), which is p-integral by choice of j.
mpz_class scaled_residue(const QuadElem& x, const EmbeddingCtx& ctx, long j, long k) {
    mpz_class mod = pow_p(ctx.p(), k);
    BigRat scale = rat_pow_p(ctx.p(), j);
    mpz_class r = residue_mod(scale * x.a(), mod);
    if (x.b() != 0) {
        mpz_class s = ctx.root_residue(k);
        r += residue_mod(scale * x.b(), mod) * s;
        r %= mod;
    }
    return r;
}

} // namespace

Valuation vp_embed(const QuadElem& x, const EmbeddingCtx& ctx) {
    if (x.is_zero()) throw ZeroElement("vp_embed: zero element");
    if (x.is_rational()) return vp_rational(x.a(), ctx.p());
    if (x.d() != ctx.d())
        throw DomainMismatch("element field does not match embedding context");

    long j = clearing_exponent(x, ctx.p());
    // v_p(p^j sigma(x)) <= 2j + v_p(norm) since the conjugate scaled the
    // same way is p-integral; a nonzero residue certifies the valuation.
    long cap = vp_rational(x.norm(), ctx.p()).value() + 2 * j + 2;
    cap = std::max({cap, j + 2, precision_ceiling_floor()});
    long k = std::min(std::max(j + 2, 4L), cap);
    while (true) {
        mpz_class r = scaled_residue(x, ctx, j, k);
        if (r != 0) return Valuation::finite(vp_int(r, ctx.p()) - j);
        if (k >= cap)
            throw PrecisionExhausted("vp_embed: nonzero element with residue 0 at ceiling " +
                                     std::to_string(cap));
        k = std::min(k * 2, cap);
    }
}

mpz_class residue_embed(const QuadElem& x, const EmbeddingCtx& ctx, long k) {
    if (x.is_zero()) return 0;
    if (vp_embed(x, ctx) < Valuation::finite(0))
        throw Error("residue_embed: element is not p-integral");
    if (x.is_rational()) return residue_mod(x.a(), pow_p(ctx.p(), k));
    long j = clearing_exponent(x, ctx.p());
    mpz_class r = scaled_residue(x, ctx, j, k + j);
    mpz_class q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), r.get_mpz_t(), pow_p(ctx.p(), j).get_mpz_t());
    if (rem != 0) throw PrecisionExhausted("residue_embed: scaled residue not divisible");
    return mpz_class(q % pow_p(ctx.p(), k));
}

BigRat floor_p(const QuadElem& x, const EmbeddingCtx& ctx) {
    if (x.is_zero()) return BigRat(0);
    long v = vp_embed(x, ctx).value();
    long i = std::max(0L, -v);
    mpz_class pe = pow_p(ctx.p(), i);
    if (x.is_rational()) {
        mpz_class t = residue_mod(x.a() * BigRat(pe), pow_p(ctx.p(), i + 1));
        BigRat out(t, pe);
        out.canonicalize();
        return out;
    }
    long j = clearing_exponent(x, ctx.p());
    // p^j sigma(x) reduced mod p^(j+i+1), then the exact p^(j-i) factor
    // is divided out, leaving p^i sigma(x) mod p^(i+1).
    mpz_class S = scaled_residue(x, ctx, j, j + i + 1);
    mpz_class q, rem;
    mpz_class divisor = pow_p(ctx.p(), j - i);
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), S.get_mpz_t(), divisor.get_mpz_t());
    if (rem != 0)
        throw PrecisionExhausted("floor_p: scaled residue not divisible by p^(j-i)");
    mpz_class t = q % pow_p(ctx.p(), i + 1);
    BigRat out(t, pe);
    out.canonicalize();
    return out;
}

} // namespace simcf
