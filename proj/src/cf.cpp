#include "simcf/cf.hpp"

#include <map>

namespace simcf {

const PartialQuotient& Expansion::digit_at(long k) const {
    if (k < 0) throw Error("digit_at: negative index");
    long n = static_cast<long>(digits.size());
    if (k < n) return digits[k];
    if (status != ExpStatus::Periodic)
        throw Error("digit_at: index " + std::to_string(k) + " past a non-periodic expansion");
    return digits[preperiod + (k - preperiod) % period];
}

std::vector<PartialQuotient> Expansion::period_digits() const {
    if (status != ExpStatus::Periodic) throw NotPeriodic("expansion has no period");
    return {digits.begin() + preperiod, digits.begin() + preperiod + period};
}

PartialQuotient digit(const QuadElem& alpha, int parity, const EmbeddingCtx& ctx) {
    BigRat c = floor_p(alpha, ctx);
    mpz_class step_size = (parity == 0) ? ctx.p() : mpz_class(1);
    mpz_class m = nearest_step_index(alpha, c, step_size);
    return BigRat(m * step_size) + c;
}

std::pair<PartialQuotient, std::optional<QuadElem>> step(const QuadElem& alpha, int parity,
                                                         const EmbeddingCtx& ctx) {
    PartialQuotient b = digit(alpha, parity, ctx);
    QuadElem r = alpha - QuadElem(b);
    if (r.is_zero()) return {b, std::nullopt};
    return {b, r.invert()};
}

Expansion expand(const QuadElem& alpha, const EmbeddingCtx& ctx, long max_steps) {
    if (max_steps < 1) throw Error("expand: max_steps must be >= 1");
    Expansion out;
    out.max_steps = max_steps;

    std::map<std::pair<QuadElem, int>, long> first_seen;
    out.states.push_back(alpha);
    for (long n = 0;; ++n) {
        const QuadElem& cur = out.states.back();
        int parity = static_cast<int>(n & 1);
        if (!cur.is_rational()) {
            auto [it, fresh] = first_seen.try_emplace({cur, parity}, n);
            if (!fresh) {
                out.status = ExpStatus::Periodic;
                out.preperiod = it->second;
                out.period = n - it->second;
                out.states.pop_back();
                return out;
            }
        }
        if (n == max_steps) {
            out.status = ExpStatus::Truncated;
            out.states.pop_back();
            return out;
        }
        auto [b, next] = step(cur, parity, ctx);
        out.digits.push_back(b);
        if (!next) {
            out.status = ExpStatus::Finite;
            return out;
        }
        out.states.push_back(*next);
    }
}

bool in_fundamental_domain(const QuadElem& alpha, const EmbeddingCtx& ctx) {
    if (alpha.is_zero()) return true;
    BigRat half_p(ctx.p(), 2);
    half_p.canonicalize();
    QuadElem re = (alpha.d() < 0) ? QuadElem(alpha.a()) : alpha;
    if (sign_real(re + QuadElem(half_p)) <= 0) return false; // X <= -p/2
    if (sign_real(re - QuadElem(half_p)) > 0) return false;  // X > p/2
    return vp_embed(alpha, ctx) > Valuation::finite(0);
}

std::pair<PartialQuotient, QuadElem> gauss_step(const QuadElem& alpha, int parity,
                                                const EmbeddingCtx& ctx) {
    if (alpha.is_zero()) throw DivisionByZero("gauss_step at zero state");
    QuadElem inv = alpha.invert();
    PartialQuotient a = digit(inv, parity, ctx);
    return {a, inv - QuadElem(a)};
}

PairState skew_step(const PairState& pair, int parity, const EmbeddingCtx& ctx) {
    auto [a, first_next] = gauss_step(pair.first, parity, ctx);
    QuadElem second_inv(BigRat(0));
    if (pair.second) {
        if (pair.second->is_zero()) throw DivisionByZero("skew_step: zero second coordinate");
        second_inv = pair.second->invert();
    }
    return {first_next, second_inv - QuadElem(a)};
}

bool in_padic_domain(const PairState& pair, int eps, const EmbeddingCtx& ctx) {
    if (!pair.second) throw Error("in_padic_domain: infinite second coordinate");
    Valuation vx = vp_embed(pair.first, ctx);
    Valuation vy = vp_embed(*pair.second, ctx);
    Valuation zero = Valuation::finite(0);
    if (eps == 0) return vx >= zero && vy < zero;
    return vx > zero && vy <= zero;
}

bool in_real_domain(const PairState& pair, int eps) {
    BigRat bound = (eps == 0) ? BigRat(1, 2) : BigRat(1);
    const QuadElem& x = pair.first;
    if (x.d() < 0 || (pair.second && pair.second->d() < 0))
        throw ImaginaryFieldUnsupported("in_real_domain needs a real embedding");
    // |x| <= bound
    if (sign_real(x - QuadElem(bound)) > 0) return false;
    if (sign_real(x + QuadElem(bound)) < 0) return false;
    if (!pair.second) return true; // |x - inf| exceeds any bound
    QuadElem diff = x - *pair.second;
    // |x - y| > bound
    return sign_real(diff - QuadElem(bound)) > 0 || sign_real(diff + QuadElem(bound)) < 0;
}

ConvergentSeq convergents(const Expansion& exp, long upto_n) {
    if (upto_n < 0) throw Error("convergents: need n >= 0");
    ConvergentSeq out;
    BigRat p_prev(0), q_prev(1); // p_{-2}, q_{-2}
    BigRat p_cur(1), q_cur(0);   // p_{-1}, q_{-1}
    for (long n = 0; n <= upto_n; ++n) {
        const BigRat& b = exp.digit_at(n);
        BigRat p_next = b * p_cur + p_prev;
        BigRat q_next = b * q_cur + q_prev;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
        if (q_cur == 0) throw Error("convergents: vanishing denominator");
        out.p.push_back(p_cur);
        out.q.push_back(q_cur);
        BigRat ratio = p_cur / q_cur;
        out.p_red.push_back(ratio.get_num());
        out.q_red.push_back(ratio.get_den());
    }
    return out;
}

std::string render_expansion(const Expansion& exp) {
    auto piece = [](const BigRat& b) { return b.get_str(); };
    std::string s = "[";
    long pre_end; // digits before the period marker
    switch (exp.status) {
        case ExpStatus::Periodic:
            pre_end = exp.preperiod;
            break;
        default:
            pre_end = static_cast<long>(exp.digits.size());
            break;
    }
    for (long k = 0; k < pre_end; ++k) {
        if (k == 0)
            s += piece(exp.digits[k]);
        else if (k == 1)
            s += "; " + piece(exp.digits[k]);
        else
            s += ", " + piece(exp.digits[k]);
    }
    if (exp.status == ExpStatus::Periodic) {
        std::string per = "(";
        for (long k = exp.preperiod; k < exp.preperiod + exp.period; ++k) {
            if (k > exp.preperiod) per += ", ";
            per += piece(exp.digits[k]);
        }
        per += ")";
        if (pre_end == 0)
            s += per;
        else if (pre_end == 1)
            s += "; " + per;
        else
            s += ", " + per;
    } else if (exp.status == ExpStatus::Truncated) {
        s += (exp.digits.size() <= 1) ? "; ..." : ", ...";
    }
    return s + "]";
}

} // namespace simcf
