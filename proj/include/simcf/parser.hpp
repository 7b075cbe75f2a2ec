#pragma once

#include <optional>
#include <string>

#include "simcf/embedding.hpp"

namespace simcf {

// Optional "; residue r mod m" clause pinning the p-adic embedding of
// the whole element; m must be a power of the working prime.
struct Congruence {
    mpz_class residue;
    mpz_class modulus;
};

struct ElementSpec {
    QuadElem element;
    std::optional<Congruence> congruence;
};

// Grammar (see docs/grammar.ebnf): +, -, *, / over arbitrary-precision
// integers and sqrt(integer), one radicand per expression after
// normalization, with the optional residue clause.
ElementSpec parse(const std::string& text);

// Chooses the p-adic root of d consistent with the spec's congruence;
// nullopt when the spec has no congruence (caller applies a default).
// Exactly one of the two roots must satisfy the clause.
std::optional<RootSelect> resolve_root_select(const ElementSpec& spec, const mpz_class& p);

} // namespace simcf
