#pragma once

#include <string>

#include "infharm/expr.hpp"

namespace infharm {

// Grammar (whitespace insensitive):
//   expr    := ['-'] term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := primary ('^' nonneg-integer)?
//   primary := rational | variable | 'exp' '(' expr ')' | '(' expr ')'
//   rational:= integer ('/' positive-integer)?
// The argument of exp must reduce to a linear form (degree one, zero
// constant); anything else leaves the class and raises a ParseError.
// Unknown variable names raise a ParseError naming the offender.
//
// render(parse(s)) is canonical, and parse(render(e)) == e for every e.
ExpPoly parse(const std::string& text, const VarTableRef& vars);

}  // namespace infharm
