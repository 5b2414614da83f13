#include "bsat/fragment.hpp"

#include <algorithm>
#include <set>

namespace bsat {

std::string_view to_string(FragmentClass c) {
  switch (c) {
    case FragmentClass::SBS: return "SBS";
    case FragmentClass::BS: return "BS";
    case FragmentClass::General: return "general";
  }
  return "general";
}

std::string_view to_string(Violation v) {
  switch (v) {
    case Violation::ContainsEquality: return "ContainsEquality";
    case Violation::ContainsFunction: return "ContainsFunction";
    case Violation::NotPrenexEA: return "NotPrenexEA";
    case Violation::RedundantQuantifiedVariable: return "RedundantQuantifiedVariable";
    case Violation::DuplicateQuantifiedVariable: return "DuplicateQuantifiedVariable";
    case Violation::UnboundVariable: return "UnboundVariable";
  }
  return "Unknown";
}

Classification classify(const Formula& f, const SymbolTable& symbols) {
  Classification out;
  auto flag = [&](Violation v) {
    if (std::find(out.violations.begin(), out.violations.end(), v) == out.violations.end()) {
      out.violations.push_back(v);
    }
  };

  std::vector<std::string> exist_vars;
  std::vector<std::string> univ_vars;
  const Formula* cur = &f;
  while (is_quantifier(cur->op())) {
    if (cur->op() == Op::Exists) {
      if (!univ_vars.empty()) flag(Violation::NotPrenexEA);
      exist_vars.push_back(cur->name());
    } else {
      univ_vars.push_back(cur->name());
    }
    cur = &cur->body();
  }
  const Formula& matrix = *cur;

  if (!is_quantifier_free(matrix)) flag(Violation::NotPrenexEA);
  if (contains_equality(f)) flag(Violation::ContainsEquality);
  if (contains_function(f)) flag(Violation::ContainsFunction);

  std::set<std::string> bound;
  for (const auto* vars : {&exist_vars, &univ_vars}) {
    for (const auto& v : *vars) {
      if (!bound.insert(v).second) flag(Violation::DuplicateQuantifiedVariable);
    }
  }

  // With a quantifier inside the matrix the free-variable comparison is
  // meaningless; NotPrenexEA already disqualifies the input.
  if (is_quantifier_free(matrix)) {
    const auto free = free_of(matrix);
    for (const auto& v : bound) {
      if (!free.count(v)) flag(Violation::RedundantQuantifiedVariable);
    }
    for (const auto& v : free) {
      if (!bound.count(v)) flag(Violation::UnboundVariable);
    }
  } else if (!free_of(f).empty()) {
    flag(Violation::UnboundVariable);
  }

  if (!out.violations.empty()) return out;

  out.bs = BSExpression{exist_vars, univ_vars, matrix, symbols};
  if (exist_vars.empty()) {
    out.fragment = FragmentClass::SBS;
    out.segment = SBSegment{univ_vars, matrix, symbols};
  } else {
    out.fragment = FragmentClass::BS;
  }
  return out;
}

std::size_t constant_count(const Formula& matrix) {
  return std::max<std::size_t>(1, con_of(matrix).size());
}

Formula to_formula(const BSExpression& bs) {
  Formula f = bs.matrix;
  for (auto it = bs.univ_vars.rbegin(); it != bs.univ_vars.rend(); ++it) f = Formula::forall(*it, f);
  for (auto it = bs.exist_vars.rbegin(); it != bs.exist_vars.rend(); ++it) f = Formula::exists(*it, f);
  return f;
}

Formula to_formula(const SBSegment& seg) {
  Formula f = seg.matrix;
  for (auto it = seg.univ_vars.rbegin(); it != seg.univ_vars.rend(); ++it) f = Formula::forall(*it, f);
  return f;
}

}  // namespace bsat
