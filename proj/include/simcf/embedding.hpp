#pragma once

#include <memory>
#include <mutex>
#include <optional>

#include "simcf/hensel.hpp"
#include "simcf/quad.hpp"

namespace simcf {

// Embedding data for one field Q(sqrt(d)) at one prime: the chosen
// p-adic root of d with a growing precision cache, plus the real branch
// convention sqrt(d) > 0 (Im sqrt(d) > 0 for d < 0).
class EmbeddingCtx {
public:
    // d = 0 builds a rational-only context (no radical ever embedded).
    EmbeddingCtx(const mpz_class& p, const mpz_class& d, std::optional<RootSelect> select = {});

    EmbeddingCtx(const EmbeddingCtx& o);
    EmbeddingCtx& operator=(const EmbeddingCtx&) = delete;

    const mpz_class& p() const { return p_; }
    const mpz_class& d() const { return d_; }
    bool imaginary() const { return d_ < 0; }
    const RootSelect& root_select() const;

    // sqrt(d) in Z_p reduced mod p^k; thread-safe, monotone cache.
    mpz_class root_residue(long k) const;

private:
    mpz_class p_, d_;
    std::optional<RootSelect> select_;
    mutable std::mutex mu_;
    mutable std::unique_ptr<HenselLifter> lifter_;
};

// v_p of the embedded element.  Throws ZeroElement on x = 0.
Valuation vp_embed(const QuadElem& x, const EmbeddingCtx& ctx);

// Digit truncation: the part of the p-adic expansion of x indexed <= 0,
// with digits in {0, ..., p-1}.  Always v_p(x - floor_p(x)) > 0.
BigRat floor_p(const QuadElem& x, const EmbeddingCtx& ctx);

// Residue of the embedded element mod p^k; requires v_p(x) >= 0.
mpz_class residue_embed(const QuadElem& x, const EmbeddingCtx& ctx, long k);

// Overridable safety margin for the valuation certification loop.
long precision_ceiling_floor();

} // namespace simcf
