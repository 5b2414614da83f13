#pragma once

// Concrete syntax.
//
//   formula    := ('forall' | 'exists') ident+ '.' formula | iff
//   iff        := implies ('<->' iff)?
//   implies    := or ('->' implies)?
//   or         := and ('|' and)*
//   and        := unary ('&' unary)*
//   unary      := '~' unary | '(' formula ')' | quantified | atom | term '=' term
//   atom       := Upper '(' term (',' term)* ')'
//   term       := lower | lower '(' term (',' term)* ')'
//
// A lowercase identifier is a variable inside the scope of a quantifier
// that binds it and a constant everywhere else.

#include <string>
#include <string_view>

#include "bsat/syntax.hpp"

namespace bsat {

/// Reserved padding byte; never valid inside formula text.
inline constexpr char kPseudoBlank = '#';

struct ParsedFormula {
  Formula formula;
  SymbolTable symbols;
};

/// Throws Error with SyntaxError, ArityMismatch, NameClash or ReservedByte.
ParsedFormula parse(std::string_view text);

std::string pretty_print(const Term& t);
std::string pretty_print(const Formula& f);

/// Drop `#`-to-end-of-line comments from a formula file.
std::string strip_comments(std::string_view file_text);

}  // namespace bsat
