#pragma once

// Finite structures, first-order satisfaction, and brute-force model search
// used as the independent ground truth for the grounding pipeline.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bsat/fragment.hpp"
#include "bsat/syntax.hpp"

namespace bsat::oracle {

using Element = std::size_t;
using Tuple = std::vector<Element>;

/// Domain {0..d-1} with explicit relation tables and constant denotations.
class FiniteStructure {
 public:
  explicit FiniteStructure(std::size_t domain_size);

  std::size_t domain_size() const { return domain_size_; }

  void declare_relation(const std::string& name, std::size_t arity);
  /// Throws UndeclaredSymbol for unknown relations or out-of-range tuples.
  void add_tuple(const std::string& name, const Tuple& tuple);
  bool holds(const std::string& name, std::span<const Element> tuple) const;
  std::vector<Tuple> tuples(const std::string& name) const;
  std::map<std::string, std::size_t> relation_arities() const;

  void set_constant(const std::string& name, Element e);
  std::optional<Element> constant(const std::string& name) const;
  const std::map<std::string, Element>& constants() const { return constants_; }

  /// Relabel every element e as perm[e].
  FiniteStructure permuted(const std::vector<Element>& perm) const;

  friend bool operator==(const FiniteStructure&, const FiniteStructure&) = default;

 private:
  struct Table {
    std::size_t arity = 0;
    std::vector<bool> bits;
    friend bool operator==(const Table&, const Table&) = default;
  };

  std::size_t index_of(const Table& table, std::span<const Element> tuple) const;

  std::size_t domain_size_;
  std::map<std::string, Table> relations_;
  std::map<std::string, Element> constants_;
};

using VariableAssignment = std::map<std::string, Element>;

/// Satisfaction in a finite structure, quantifiers ranging over the domain
/// and `=` read as identity. Throws UndeclaredSymbol or
/// UnassignedFreeVariable.
bool fo_evaluate(const FiniteStructure& s, const VariableAssignment& beta, const Formula& f);

inline constexpr std::uint64_t kDefaultEnumerationGuard = 10'000'000;

struct ModelSearch {
  std::optional<FiniteStructure> model;  // empty means no model up to the bound
  std::size_t max_size = 0;
  std::uint64_t nodes = 0;  // work counter checked against the guard

  bool sat() const { return model.has_value(); }
};

/// Search domain sizes 1..max_size in canonical order: constant
/// denotations as an odometer (first constant fastest), then relation
/// tables as one binary counter (first relation in name order lowest,
/// tuple (0,..,0) lowest within a relation). Returns the first model in
/// that order. Branches whose partial tables already falsify the sentence
/// are cut, which leaves the order and the reported model unchanged.
/// Throws EnumerationGuard once more than `guard` search nodes are visited.
ModelSearch find_model(const Formula& sentence, std::size_t max_size,
                       std::uint64_t guard = kDefaultEnumerationGuard);

/// The same search without pruning: every interpretation is built and
/// evaluated with fo_evaluate. Throws EnumerationGuard up front when the
/// total interpretation count exceeds `guard`.
ModelSearch find_model_naive(const Formula& sentence, std::size_t max_size,
                             std::uint64_t guard = kDefaultEnumerationGuard);

/// Domain-size cap that makes a failed search conclusive: m for a universal
/// segment, m + s otherwise, with m = max(1, |con(matrix)|).
std::size_t model_bound(const BSExpression& bs);
std::size_t model_bound(const SBSegment& seg);

ModelSearch decide_by_bound(const BSExpression& bs, std::uint64_t guard = kDefaultEnumerationGuard);
ModelSearch decide_by_bound(const SBSegment& seg, std::uint64_t guard = kDefaultEnumerationGuard);

}  // namespace bsat::oracle
