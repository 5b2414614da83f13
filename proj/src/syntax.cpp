#include "bsat/syntax.hpp"

#include <algorithm>
#include <cassert>

#include "bsat/error.hpp"

namespace bsat {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::ReservedByte: return "ReservedByte";
    case ErrorKind::NameClash: return "NameClash";
    case ErrorKind::UnmappedFreeVariable: return "UnmappedFreeVariable";
    case ErrorKind::NotQuantifierFree: return "NotQuantifierFree";
    case ErrorKind::NotInFragment: return "NotInFragment";
    case ErrorKind::ExplosionGuard: return "ExplosionGuard";
    case ErrorKind::UnassignedVariable: return "UnassignedVariable";
    case ErrorKind::TooManyVariables: return "TooManyVariables";
    case ErrorKind::UndeclaredSymbol: return "UndeclaredSymbol";
    case ErrorKind::UnassignedFreeVariable: return "UnassignedFreeVariable";
    case ErrorKind::EnumerationGuard: return "EnumerationGuard";
    case ErrorKind::PaddingOverflow: return "PaddingOverflow";
    case ErrorKind::MalformedPadding: return "MalformedPadding";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Term Term::variable(std::string name) { return Term{Kind::Variable, std::move(name), {}}; }
Term Term::constant(std::string name) { return Term{Kind::Constant, std::move(name), {}}; }
Term Term::function(std::string name, std::vector<Term> args) {
  return Term{Kind::Function, std::move(name), std::move(args)};
}

bool is_binary(Op op) {
  return op == Op::And || op == Op::Or || op == Op::Implies || op == Op::Iff;
}

bool is_quantifier(Op op) { return op == Op::Forall || op == Op::Exists; }

Formula Formula::atom(std::string relation, std::vector<Term> terms) {
  return Formula(std::make_shared<const Node>(Node{Op::Atom, std::move(relation), std::move(terms), {}}));
}

Formula Formula::equal(Term lhs, Term rhs) {
  return Formula(std::make_shared<const Node>(Node{Op::Equal, {}, {std::move(lhs), std::move(rhs)}, {}}));
}

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Op::Not, {}, {}, {std::move(f)}}));
}

Formula Formula::binary(Op op, Formula lhs, Formula rhs) {
  assert(is_binary(op));
  return Formula(std::make_shared<const Node>(Node{op, {}, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::forall(std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(Node{Op::Forall, std::move(var), {}, {std::move(body)}}));
}

Formula Formula::exists(std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(Node{Op::Exists, std::move(var), {}, {std::move(body)}}));
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
const std::vector<Term>& Formula::terms() const { return node_->terms; }
const Formula& Formula::lhs() const { return node_->children.at(0); }
const Formula& Formula::rhs() const { return node_->children.at(1); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.op == y.op && x.name == y.name && x.terms == y.terms && x.children == y.children;
}

namespace {

void collect_vars(const Term& t, std::set<std::string>& out) {
  switch (t.kind) {
    case Term::Kind::Variable: out.insert(t.name); break;
    case Term::Kind::Constant: break;
    case Term::Kind::Function:
      for (const auto& a : t.args) collect_vars(a, out);
      break;
  }
}

void collect_cons(const Term& t, std::set<std::string>& out) {
  switch (t.kind) {
    case Term::Kind::Variable: break;
    case Term::Kind::Constant: out.insert(t.name); break;
    case Term::Kind::Function:
      for (const auto& a : t.args) collect_cons(a, out);
      break;
  }
}

bool term_has_function(const Term& t) { return t.is_function(); }

}  // namespace

std::set<std::string> vars_of(const Term& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

std::set<std::string> con_of(const Term& t) {
  std::set<std::string> out;
  collect_cons(t, out);
  return out;
}

std::set<std::string> free_of(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Equal: {
      std::set<std::string> out;
      for (const auto& t : f.terms()) collect_vars(t, out);
      return out;
    }
    case Op::Not: return free_of(f.lhs());
    case Op::Forall:
    case Op::Exists: {
      auto out = free_of(f.body());
      out.erase(f.name());
      return out;
    }
    default: {
      auto out = free_of(f.lhs());
      out.merge(free_of(f.rhs()));
      return out;
    }
  }
}

std::set<std::string> con_of(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Equal: {
      std::set<std::string> out;
      for (const auto& t : f.terms()) collect_cons(t, out);
      return out;
    }
    case Op::Not:
    case Op::Forall:
    case Op::Exists: return con_of(f.lhs());
    default: {
      auto out = con_of(f.lhs());
      out.merge(con_of(f.rhs()));
      return out;
    }
  }
}

namespace {

void collect_relations(const Formula& f, std::map<std::string, std::size_t>& out) {
  switch (f.op()) {
    case Op::Atom: {
      auto [it, inserted] = out.emplace(f.name(), f.terms().size());
      if (!inserted && it->second != f.terms().size()) {
        throw Error(ErrorKind::ArityMismatch,
                    "relation " + f.name() + " used with arity " + std::to_string(it->second) +
                        " and " + std::to_string(f.terms().size()));
      }
      return;
    }
    case Op::Equal: return;
    case Op::Not:
    case Op::Forall:
    case Op::Exists: collect_relations(f.lhs(), out); return;
    default:
      collect_relations(f.lhs(), out);
      collect_relations(f.rhs(), out);
  }
}

}  // namespace

std::map<std::string, std::size_t> relations_of(const Formula& f) {
  std::map<std::string, std::size_t> out;
  collect_relations(f, out);
  return out;
}

bool is_quantifier_free(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Equal: return true;
    case Op::Forall:
    case Op::Exists: return false;
    case Op::Not: return is_quantifier_free(f.lhs());
    default: return is_quantifier_free(f.lhs()) && is_quantifier_free(f.rhs());
  }
}

bool contains_equality(const Formula& f) {
  switch (f.op()) {
    case Op::Atom: return false;
    case Op::Equal: return true;
    case Op::Not:
    case Op::Forall:
    case Op::Exists: return contains_equality(f.lhs());
    default: return contains_equality(f.lhs()) || contains_equality(f.rhs());
  }
}

bool contains_function(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Equal:
      return std::any_of(f.terms().begin(), f.terms().end(), term_has_function);
    case Op::Not:
    case Op::Forall:
    case Op::Exists: return contains_function(f.lhs());
    default: return contains_function(f.lhs()) || contains_function(f.rhs());
  }
}

std::size_t depth(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Equal: return 0;
    case Op::Not:
    case Op::Forall:
    case Op::Exists: return 1 + depth(f.lhs());
    default: return 1 + std::max(depth(f.lhs()), depth(f.rhs()));
  }
}

namespace {

Term substitute_term(const Term& t, const std::map<std::string, std::string>& sub) {
  switch (t.kind) {
    case Term::Kind::Variable: {
      auto it = sub.find(t.name);
      if (it == sub.end()) {
        throw Error(ErrorKind::UnmappedFreeVariable, "no constant for free variable " + t.name);
      }
      return Term::constant(it->second);
    }
    case Term::Kind::Constant: return t;
    case Term::Kind::Function: {
      std::vector<Term> args;
      args.reserve(t.args.size());
      for (const auto& a : t.args) args.push_back(substitute_term(a, sub));
      return Term::function(t.name, std::move(args));
    }
  }
  return t;
}

Formula substitute_rec(const Formula& f, const std::map<std::string, std::string>& sub) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Equal: {
      std::vector<Term> terms;
      terms.reserve(f.terms().size());
      for (const auto& t : f.terms()) terms.push_back(substitute_term(t, sub));
      if (f.op() == Op::Equal) return Formula::equal(std::move(terms[0]), std::move(terms[1]));
      return Formula::atom(f.name(), std::move(terms));
    }
    case Op::Not: return Formula::negation(substitute_rec(f.lhs(), sub));
    case Op::Forall:
    case Op::Exists:
      throw Error(ErrorKind::NotQuantifierFree, "cannot ground a formula containing quantifiers");
    default:
      return Formula::binary(f.op(), substitute_rec(f.lhs(), sub), substitute_rec(f.rhs(), sub));
  }
}

}  // namespace

Formula substitute_ground(const Formula& f, const std::map<std::string, std::string>& sub) {
  if (!is_quantifier_free(f)) {
    throw Error(ErrorKind::NotQuantifierFree, "cannot ground a formula containing quantifiers");
  }
  return substitute_rec(f, sub);
}

Formula desugar_connectives(const Formula& f) {
  using F = Formula;
  switch (f.op()) {
    case Op::Atom:
    case Op::Equal: return f;
    case Op::Not: return F::negation(desugar_connectives(f.lhs()));
    case Op::Forall: return F::forall(f.name(), desugar_connectives(f.body()));
    case Op::Exists: return F::exists(f.name(), desugar_connectives(f.body()));
    default: break;
  }
  auto a = desugar_connectives(f.lhs());
  auto b = desugar_connectives(f.rhs());
  switch (f.op()) {
    case Op::Or: return F::disjunction(a, b);
    case Op::And:
      // ~(~a | ~b)
      return F::negation(F::disjunction(F::negation(a), F::negation(b)));
    case Op::Implies: return F::disjunction(F::negation(a), b);
    case Op::Iff:
      // ~(a | b) | ~(~a | ~b)
      return F::disjunction(F::negation(F::disjunction(a, b)),
                            F::negation(F::disjunction(F::negation(a), F::negation(b))));
    default: return f;
  }
}

void SymbolTable::add_constant(const std::string& name) {
  auto it = std::lower_bound(constants.begin(), constants.end(), name);
  if (it == constants.end() || *it != name) constants.insert(it, name);
}

bool SymbolTable::has_constant(const std::string& name) const {
  return std::binary_search(constants.begin(), constants.end(), name);
}

namespace {

void infer_term(const Term& t, SymbolTable& table) {
  switch (t.kind) {
    case Term::Kind::Variable: table.variables.insert(t.name); return;
    case Term::Kind::Constant: table.add_constant(t.name); return;
    case Term::Kind::Function: {
      auto [it, inserted] = table.functions.emplace(t.name, t.args.size());
      if (!inserted && it->second != t.args.size()) {
        throw Error(ErrorKind::ArityMismatch, "function " + t.name + " used with arity " +
                                                  std::to_string(it->second) + " and " +
                                                  std::to_string(t.args.size()));
      }
      for (const auto& a : t.args) infer_term(a, table);
      return;
    }
  }
}

void infer_formula(const Formula& f, SymbolTable& table) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Equal:
      for (const auto& t : f.terms()) infer_term(t, table);
      return;
    case Op::Forall:
    case Op::Exists:
      table.variables.insert(f.name());
      infer_formula(f.body(), table);
      return;
    case Op::Not: infer_formula(f.lhs(), table); return;
    default:
      infer_formula(f.lhs(), table);
      infer_formula(f.rhs(), table);
  }
}

}  // namespace

SymbolTable infer_symbols(const Formula& f) {
  SymbolTable table;
  table.relations = relations_of(f);
  infer_formula(f, table);
  for (const auto& c : table.constants) {
    if (table.variables.count(c) || table.functions.count(c) || table.relations.count(c)) {
      throw Error(ErrorKind::NameClash, "identifier " + c + " is used both as a constant and as another symbol");
    }
  }
  for (const auto& v : table.variables) {
    if (table.functions.count(v) || table.relations.count(v)) {
      throw Error(ErrorKind::NameClash, "identifier " + v + " is used both as a variable and as another symbol");
    }
  }
  for (const auto& [fn, arity] : table.functions) {
    if (table.relations.count(fn)) {
      throw Error(ErrorKind::NameClash, "identifier " + fn + " is used both as a function and as a relation");
    }
  }
  return table;
}

}  // namespace bsat
