#pragma once

// First-order abstract syntax: terms, formulas, symbol tables and the
// inductive var/free/con functions.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace bsat {

struct Term {
  enum class Kind : std::uint8_t { Variable, Constant, Function };

  Kind kind = Kind::Constant;
  std::string name;
  std::vector<Term> args;  // only for Function

  static Term variable(std::string name);
  static Term constant(std::string name);
  static Term function(std::string name, std::vector<Term> args);

  bool is_variable() const { return kind == Kind::Variable; }
  bool is_constant() const { return kind == Kind::Constant; }
  bool is_function() const { return kind == Kind::Function; }

  friend bool operator==(const Term&, const Term&) = default;
};

enum class Op : std::uint8_t {
  Atom,
  Equal,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Forall,
  Exists,
};

bool is_binary(Op op);
bool is_quantifier(Op op);

/// Immutable formula tree. Copies share structure.
class Formula {
 public:
  static Formula atom(std::string relation, std::vector<Term> terms);
  static Formula equal(Term lhs, Term rhs);
  static Formula negation(Formula f);
  static Formula binary(Op op, Formula lhs, Formula rhs);
  static Formula conjunction(Formula lhs, Formula rhs) { return binary(Op::And, std::move(lhs), std::move(rhs)); }
  static Formula disjunction(Formula lhs, Formula rhs) { return binary(Op::Or, std::move(lhs), std::move(rhs)); }
  static Formula implication(Formula lhs, Formula rhs) { return binary(Op::Implies, std::move(lhs), std::move(rhs)); }
  static Formula biconditional(Formula lhs, Formula rhs) { return binary(Op::Iff, std::move(lhs), std::move(rhs)); }
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);

  Op op() const;

  /// Relation name for atoms, bound variable for quantifiers, empty otherwise.
  const std::string& name() const;
  /// Arguments of an Atom, or the two sides of an Equal.
  const std::vector<Term>& terms() const;

  /// Operand of Not, body of a quantifier, left side of a binary connective.
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& body() const { return lhs(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Op op;
  std::string name;
  std::vector<Term> terms;
  std::vector<Formula> children;
};

std::set<std::string> vars_of(const Term& t);
std::set<std::string> free_of(const Formula& f);
std::set<std::string> con_of(const Term& t);
std::set<std::string> con_of(const Formula& f);

/// Relation name -> arity for every atom in `f`. Throws ArityMismatch.
std::map<std::string, std::size_t> relations_of(const Formula& f);

bool is_quantifier_free(const Formula& f);
bool contains_equality(const Formula& f);
bool contains_function(const Formula& f);
std::size_t depth(const Formula& f);

/// Replace the free variables of a quantifier-free formula by constants.
/// Throws NotQuantifierFree or UnmappedFreeVariable.
Formula substitute_ground(const Formula& f,
                          const std::map<std::string, std::string>& sub);

/// Rewrite &, -> and <-> into their {~, |} abbreviations.
Formula desugar_connectives(const Formula& f);

/// Relation, function and constant signatures plus the variables in use.
/// Relation, constant and variable names are pairwise disjoint.
struct SymbolTable {
  std::map<std::string, std::size_t> relations;
  std::map<std::string, std::size_t> functions;
  std::vector<std::string> constants;  // sorted, unique
  std::set<std::string> variables;

  void add_constant(const std::string& name);
  bool has_constant(const std::string& name) const;

  friend bool operator==(const SymbolTable&, const SymbolTable&) = default;
};

/// Infer the symbol table of `f`. Throws ArityMismatch or NameClash.
SymbolTable infer_symbols(const Formula& f);

}  // namespace bsat
