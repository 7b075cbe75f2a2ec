#include "simcf/parser.hpp"

#include <cctype>

namespace simcf {

namespace {

struct Lexer {
    const std::string& text;
    size_t pos = 0;

    explicit Lexer(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eof() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) throw SyntaxError(std::string("expected ") + what, pos);
    }

    bool accept_word(const char* w) {
        skip_ws();
        size_t len = std::string(w).size();
        if (text.compare(pos, len, w) != 0) return false;
        size_t end = pos + len;
        if (end < text.size() &&
            (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_'))
            return false;
        pos += len;
        return true;
    }

    mpz_class integer() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw SyntaxError("expected an integer", pos);
        return mpz_class(text.substr(start, pos - start));
    }
};

struct Parser {
    Lexer lex;

    explicit Parser(const std::string& t) : lex(t) {}

    QuadElem expr() {
        QuadElem v = term();
        while (true) {
            if (lex.accept('+'))
                v = v + term();
            else if (lex.accept('-'))
                v = v - term();
            else
                return v;
        }
    }

    QuadElem term() {
        QuadElem v = unary();
        while (true) {
            if (lex.accept('*')) {
                v = v * unary();
            } else if (lex.accept('/')) {
                size_t at = lex.pos;
                QuadElem den = unary();
                if (den.is_zero()) throw SyntaxError("division by zero", at);
                v = v * den.invert();
            } else {
                return v;
            }
        }
    }

    QuadElem unary() {
        if (lex.accept('-')) return -unary();
        if (lex.accept('+')) return unary();
        return atom();
    }

    QuadElem atom() {
        if (lex.accept_word("sqrt")) {
            lex.expect('(', "'(' after sqrt");
            bool neg = lex.accept('-');
            mpz_class n = lex.integer();
            lex.expect(')', "')'");
            if (neg) n = -n;
            if (n == 0) return QuadElem(BigRat(0));
            return QuadElem::make(BigRat(0), BigRat(1), n);
        }
        if (lex.accept('(')) {
            QuadElem v = expr();
            lex.expect(')', "')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(lex.peek())))
            return QuadElem(BigRat(lex.integer()));
        throw SyntaxError("expected a number, sqrt(...), or parenthesized expression", lex.pos);
    }

    ElementSpec parse_all() {
        ElementSpec spec;
        spec.element = expr();
        if (lex.accept(';')) {
            if (!lex.accept_word("residue"))
                throw SyntaxError("expected 'residue' after ';'", lex.pos);
            Congruence cong;
            bool neg = lex.accept('-');
            cong.residue = lex.integer();
            if (neg) cong.residue = -cong.residue;
            if (!lex.accept_word("mod")) throw SyntaxError("expected 'mod'", lex.pos);
            cong.modulus = lex.integer();
            if (lex.accept('^')) {
                mpz_class e = lex.integer();
                if (!e.fits_slong_p() || e.get_si() < 1)
                    throw SyntaxError("bad modulus exponent", lex.pos);
                cong.modulus = pow_p(cong.modulus, e.get_si());
            }
            if (cong.modulus < 2) throw SyntaxError("modulus must be >= 2", lex.pos);
            spec.congruence = cong;
        }
        if (!lex.eof()) throw SyntaxError("unexpected trailing input", lex.pos);
        return spec;
    }
};

} // namespace

ElementSpec parse(const std::string& text) {
    Parser p(text);
    return p.parse_all();
}

std::optional<RootSelect> resolve_root_select(const ElementSpec& spec, const mpz_class& p) {
    if (!spec.congruence) return std::nullopt;
    const Congruence& cong = *spec.congruence;

    // The modulus must be p^k for some k >= 1.
    mpz_class rest;
    long k = static_cast<long>(
        mpz_remove(rest.get_mpz_t(), cong.modulus.get_mpz_t(), p.get_mpz_t()));
    if (rest != 1 || k < 1)
        throw UnsatisfiableCongruence("modulus " + cong.modulus.get_str() +
                                      " is not a power of " + p.get_str());
    mpz_class want = cong.residue % cong.modulus;
    if (want < 0) want += cong.modulus;

    const QuadElem& x = spec.element;
    if (x.is_rational()) {
        // Nothing to select; just verify the stated residue.
        if (!x.is_zero()) {
            if (vp_rational(x.a(), p) < Valuation::finite(0) ||
                residue_mod(x.a(), cong.modulus) != want)
                throw UnsatisfiableCongruence("rational element does not satisfy the residue");
        } else if (want != 0) {
            throw UnsatisfiableCongruence("zero element has residue 0");
        }
        return std::nullopt;
    }

    RootSelect first = default_root_select(x.d(), p);
    RootSelect second = opposite_root_select(first, p);
    std::optional<RootSelect> found;
    int matches = 0;
    for (const RootSelect& cand : {first, second}) {
        EmbeddingCtx ctx(p, x.d(), cand);
        try {
            if (vp_embed(x, ctx) < Valuation::finite(0)) continue;
            if (residue_embed(x, ctx, k) == want) {
                ++matches;
                found = cand;
            }
        } catch (const ZeroElement&) {
            continue;
        }
    }
    if (matches == 0)
        throw UnsatisfiableCongruence("neither p-adic root satisfies the residue clause");
    if (matches > 1)
        throw UnsatisfiableCongruence("residue clause does not distinguish the two roots");
    return found;
}

} // namespace simcf
