#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "pgz/lexer.hpp"
#include "pgz/ratfunc.hpp"

namespace pgz {

// Textual polynomial syntax, e.g. `3/2*at^2*ab^(1/2) - 1`. Supports + - * /,
// integer or parenthesized rational exponents, and parentheses. Division is
// allowed (the result is a rational function); callers that need a polynomial
// use parse_poly.
RatFunc parse_ratfunc(Lexer& lex, const VarTablePtr& vars);
RatFunc parse_ratfunc(std::string_view text, const VarTablePtr& vars);
QPoly parse_poly(std::string_view text, const VarTablePtr& vars);

// Splits f, written over `combined`, into a polynomial over `poly_vars` whose
// coefficients are rational functions over `coeff_vars`. Every variable of
// `combined` must appear by name in exactly one of the two tables, and the
// denominator must not mention poly variables.
KPoly split_coefficients(const RatFunc& f, const VarTablePtr& coeff_vars,
                         const VarTablePtr& poly_vars);

// Inverse of split_coefficients.
RatFunc flatten_coefficients(const KPoly& p, const VarTablePtr& combined);

// Concatenation of two tables (names must be disjoint).
VarTablePtr concat_tables(const VarTablePtr& a, const VarTablePtr& b);

KPoly parse_kpoly(std::string_view text, const VarTablePtr& coeff_vars, const VarTablePtr& poly_vars);

}  // namespace pgz
