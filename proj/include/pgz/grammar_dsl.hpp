#pragma once

#include <string_view>

#include "pgz/encoding.hpp"
#include "pgz/grammar.hpp"

namespace pgz {

// Grammar file syntax:
//
//   alphabet a;                 // declares at (ordinary) and ab (bar)
//   params c d:bar;             // further coefficient parameters
//   vars xt xb:bar;             // ring variables X of a grammar over K[X]
//   nonterminal S dim 4;
//   initial A;
//   polymap p(r1, r2) = (r1*ab + at, r2*ab);
//   twist p with subst { a -> aa };
//   twist q with map { b -> a + b } inverse { b -> b - a };
//   S -> p(S);
//   S -> (0, 1);
//   Y -> a - b;
//
// Names must be declared before use.
Grammar parse_grammar(std::string_view text);

// The same automorphism on a larger parameter table (identity elsewhere).
FieldAutomorphism extend_automorphism(const FieldAutomorphism& a, const VarTablePtr& params);

}  // namespace pgz
