#pragma once

// Propositional formulas over {~, |}, assignments, clause form and the two
// solvers (DPLL and exhaustive truth table).

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace bsat::prop {

using Var = std::uint32_t;  // 1-based

class PropFormula {
 public:
  enum class Op : std::uint8_t { Var, Not, Or };

  static PropFormula var(Var index);
  static PropFormula negation(PropFormula f);
  static PropFormula disjunction(PropFormula lhs, PropFormula rhs);

  Op op() const { return node_->op; }
  Var index() const { return node_->index; }
  const PropFormula& lhs() const { return node_->children.at(0); }
  const PropFormula& rhs() const { return node_->children.at(1); }

  friend bool operator==(const PropFormula& a, const PropFormula& b);

 private:
  struct Node {
    Op op;
    Var index = 0;
    std::vector<PropFormula> children;
  };
  explicit PropFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::string to_string(const PropFormula& f);
std::set<Var> pvar(const PropFormula& f);

class Assignment {
 public:
  void set(Var v, bool value);
  std::optional<bool> get(Var v) const;
  bool contains(Var v) const { return get(v).has_value(); }
  /// Largest index that may be assigned.
  Var extent() const { return static_cast<Var>(values_.empty() ? 0 : values_.size() - 1); }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::int8_t> values_;  // -1 unassigned
};

/// Throws UnassignedVariable.
bool evaluate(const PropFormula& f, const Assignment& b);

using Literal = std::int32_t;
using Clause = std::vector<Literal>;

struct Cnf {
  Var num_vars = 0;
  std::vector<Clause> clauses;

  friend bool operator==(const Cnf&, const Cnf&) = default;
};

/// Equisatisfiable clause form. Disjunctions of literals and conjunctions
/// of those (in their ~(~a | ~b) shape) become clauses directly; anything
/// else gets auxiliary variables numbered above every input variable.
/// Tautological clauses are dropped and duplicate literals merged.
Cnf to_cnf(std::span<const PropFormula> fs);

/// Largest variable index mentioned in `fs`, 0 if none.
Var max_var(std::span<const PropFormula> fs);

struct SolveResult {
  bool sat = false;
  Assignment assignment;  // total over 1..num_vars when sat
};

/// Complete DPLL: unit propagation, pure literals, smallest unassigned
/// variable first, true before false.
SolveResult dpll_solve(const Cnf& cnf);

inline constexpr std::size_t kTruthTableMaxVars = 24;

/// Exhaustive check over every assignment to the variables of `fs`.
/// Throws TooManyVariables above kTruthTableMaxVars.
SolveResult truth_table_solve(std::span<const PropFormula> fs);

}  // namespace bsat::prop
