#pragma once

// Recognizers for the Bernays-Schoenfinkel class (prefix exists* forall*)
// and its universal segment (prefix forall*).

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bsat/syntax.hpp"

namespace bsat {

enum class FragmentClass { SBS, BS, General };

std::string_view to_string(FragmentClass c);

enum class Violation {
  ContainsEquality,
  ContainsFunction,
  NotPrenexEA,
  RedundantQuantifiedVariable,
  DuplicateQuantifiedVariable,
  UnboundVariable,
};

std::string_view to_string(Violation v);

/// exists x1..xs forall y1..yt matrix, with a quantifier-, equality- and
/// function-free matrix whose free variables are exactly x1..xs, y1..yt.
struct BSExpression {
  std::vector<std::string> exist_vars;
  std::vector<std::string> univ_vars;
  Formula matrix;
  SymbolTable symbols;
};

/// forall y1..yt matrix. t == 0 is accepted as the degenerate ground case.
struct SBSegment {
  std::vector<std::string> univ_vars;
  Formula matrix;
  SymbolTable symbols;
};

struct Classification {
  FragmentClass fragment = FragmentClass::General;
  std::optional<BSExpression> bs;    // set for SBS and BS
  std::optional<SBSegment> segment;  // set for SBS only
  std::vector<Violation> violations;

  std::size_t s() const { return bs ? bs->exist_vars.size() : 0; }
  std::size_t t() const { return bs ? bs->univ_vars.size() : 0; }
};

/// Total: never throws on a well-formed formula.
Classification classify(const Formula& f, const SymbolTable& symbols);

/// |con(matrix)|, raised to 1 when the matrix has no constants.
std::size_t constant_count(const Formula& matrix);

/// Rebuild the prenex sentence from its parts.
Formula to_formula(const BSExpression& bs);
Formula to_formula(const SBSegment& seg);

}  // namespace bsat
