#pragma once
#include <string>

#include "rational_expr.hpp"
#include "symtab.hpp"

namespace dw {

// Parses an arithmetic expression over the declared symbols into canonical
// rational-function form. Grammar (see docs/grammar.md):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('+'|'-') factor | primary ('^' signed-integer)*
//   primary:= integer | symbol | '(' expr ')'
// Exponents must be integer literals; '^' is right-associative
// (x^2^3 == x^8) and every folded exponent must stay within |n| <= 64.
RationalExpr parse_expr(const std::string& text, const SymbolTable& st);

}  // namespace dw
