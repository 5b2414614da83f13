#include "bsat/oracle.hpp"

#include <algorithm>
#include <functional>

#include "bsat/error.hpp"

namespace bsat::oracle {

FiniteStructure::FiniteStructure(std::size_t domain_size) : domain_size_(domain_size) {
  if (domain_size == 0) throw Error(ErrorKind::UndeclaredSymbol, "domain must be non-empty");
}

void FiniteStructure::declare_relation(const std::string& name, std::size_t arity) {
  std::size_t cells = 1;
  for (std::size_t i = 0; i < arity; ++i) cells *= domain_size_;
  relations_[name] = Table{arity, std::vector<bool>(cells, false)};
}

std::size_t FiniteStructure::index_of(const Table& table, std::span<const Element> tuple) const {
  if (tuple.size() != table.arity) {
    throw Error(ErrorKind::UndeclaredSymbol, "tuple length does not match relation arity");
  }
  std::size_t idx = 0;
  for (auto e : tuple) {
    if (e >= domain_size_) throw Error(ErrorKind::UndeclaredSymbol, "tuple element outside the domain");
    idx = idx * domain_size_ + e;
  }
  return idx;
}

void FiniteStructure::add_tuple(const std::string& name, const Tuple& tuple) {
  auto it = relations_.find(name);
  if (it == relations_.end()) throw Error(ErrorKind::UndeclaredSymbol, "relation " + name + " is not declared");
  it->second.bits[index_of(it->second, tuple)] = true;
}

bool FiniteStructure::holds(const std::string& name, std::span<const Element> tuple) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) throw Error(ErrorKind::UndeclaredSymbol, "relation " + name + " is not declared");
  return it->second.bits[index_of(it->second, tuple)];
}

std::vector<Tuple> FiniteStructure::tuples(const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) throw Error(ErrorKind::UndeclaredSymbol, "relation " + name + " is not declared");
  const auto& table = it->second;
  std::vector<Tuple> out;
  for (std::size_t idx = 0; idx < table.bits.size(); ++idx) {
    if (!table.bits[idx]) continue;
    Tuple t(table.arity);
    std::size_t rest = idx;
    for (std::size_t j = table.arity; j-- > 0;) {
      t[j] = rest % domain_size_;
      rest /= domain_size_;
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::map<std::string, std::size_t> FiniteStructure::relation_arities() const {
  std::map<std::string, std::size_t> out;
  for (const auto& [name, table] : relations_) out.emplace(name, table.arity);
  return out;
}

void FiniteStructure::set_constant(const std::string& name, Element e) {
  if (e >= domain_size_) throw Error(ErrorKind::UndeclaredSymbol, "constant " + name + " denotes outside the domain");
  constants_[name] = e;
}

std::optional<Element> FiniteStructure::constant(const std::string& name) const {
  auto it = constants_.find(name);
  if (it == constants_.end()) return std::nullopt;
  return it->second;
}

FiniteStructure FiniteStructure::permuted(const std::vector<Element>& perm) const {
  FiniteStructure out(domain_size_);
  for (const auto& [name, table] : relations_) {
    out.declare_relation(name, table.arity);
    for (auto t : tuples(name)) {
      for (auto& e : t) e = perm.at(e);
      out.add_tuple(name, t);
    }
  }
  for (const auto& [name, e] : constants_) out.set_constant(name, perm.at(e));
  return out;
}

namespace {

Element eval_term(const FiniteStructure& s, const VariableAssignment& beta, const Term& t) {
  switch (t.kind) {
    case Term::Kind::Variable: {
      auto it = beta.find(t.name);
      if (it == beta.end()) throw Error(ErrorKind::UnassignedFreeVariable, "variable " + t.name + " is unassigned");
      return it->second;
    }
    case Term::Kind::Constant: {
      auto e = s.constant(t.name);
      if (!e) throw Error(ErrorKind::UndeclaredSymbol, "constant " + t.name + " has no denotation");
      return *e;
    }
    case Term::Kind::Function:
      throw Error(ErrorKind::UndeclaredSymbol, "function " + t.name + " has no interpretation");
  }
  return 0;
}

}  // namespace

bool fo_evaluate(const FiniteStructure& s, const VariableAssignment& beta, const Formula& f) {
  switch (f.op()) {
    case Op::Atom: {
      Tuple tuple;
      for (const auto& t : f.terms()) tuple.push_back(eval_term(s, beta, t));
      return s.holds(f.name(), tuple);
    }
    case Op::Equal: return eval_term(s, beta, f.terms()[0]) == eval_term(s, beta, f.terms()[1]);
    case Op::Not: return !fo_evaluate(s, beta, f.lhs());
    case Op::And: return fo_evaluate(s, beta, f.lhs()) && fo_evaluate(s, beta, f.rhs());
    case Op::Or: return fo_evaluate(s, beta, f.lhs()) || fo_evaluate(s, beta, f.rhs());
    case Op::Implies: return !fo_evaluate(s, beta, f.lhs()) || fo_evaluate(s, beta, f.rhs());
    case Op::Iff: return fo_evaluate(s, beta, f.lhs()) == fo_evaluate(s, beta, f.rhs());
    case Op::Forall:
    case Op::Exists: {
      VariableAssignment inner = beta;
      for (Element e = 0; e < s.domain_size(); ++e) {
        inner[f.name()] = e;
        const bool v = fo_evaluate(s, inner, f.body());
        if (f.op() == Op::Forall && !v) return false;
        if (f.op() == Op::Exists && v) return true;
      }
      return f.op() == Op::Forall;
    }
  }
  return false;
}

namespace {

struct Signature {
  std::vector<std::string> constants;                         // sorted
  std::vector<std::pair<std::string, std::size_t>> relations;  // name order
};

Signature signature_of(const Formula& f) {
  Signature sig;
  for (const auto& c : con_of(f)) sig.constants.push_back(c);
  for (const auto& r : relations_of(f)) sig.relations.push_back(r);
  return sig;
}

void check_sentence(const Formula& f) {
  if (contains_function(f)) throw Error(ErrorKind::UndeclaredSymbol, "function symbols have no interpretation");
  auto free = free_of(f);
  if (!free.empty()) {
    throw Error(ErrorKind::UnassignedFreeVariable, "formula is not a sentence: " + *free.begin() + " is free");
  }
}

std::uint64_t power(std::uint64_t base, std::size_t exp, bool& overflow) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) {
      overflow = true;
      return 0;
    }
    r *= base;
  }
  return r;
}

// Kleene three-valued values.
constexpr std::int8_t kFalse = 0;
constexpr std::int8_t kTrue = 1;
constexpr std::int8_t kUnknown = 2;

class PrunedSearch {
 public:
  PrunedSearch(const Formula& f, std::uint64_t guard) : guard_(guard), sig_(signature_of(f)) {
    std::vector<std::string> scope;
    root_ = compile(f, scope);
  }

  ModelSearch run(std::size_t max_size) {
    ModelSearch out;
    out.max_size = max_size;
    for (std::size_t d = 1; d <= max_size; ++d) {
      if (search_size(d)) {
        out.model = build(d);
        break;
      }
    }
    out.nodes = nodes_;
    return out;
  }

 private:
  struct Arg {
    bool is_var;
    std::size_t index;  // slot or constant index
  };
  struct Node {
    Op op;
    std::size_t rel = 0;
    std::vector<Arg> args;
    std::size_t slot = 0;
    std::size_t a = 0, b = 0;
  };

  std::size_t compile(const Formula& f, std::vector<std::string>& scope) {
    Node n{f.op(), 0, {}, 0, 0, 0};
    switch (f.op()) {
      case Op::Atom:
      case Op::Equal: {
        if (f.op() == Op::Atom) {
          auto it = std::find_if(sig_.relations.begin(), sig_.relations.end(),
                                 [&](const auto& r) { return r.first == f.name(); });
          n.rel = static_cast<std::size_t>(it - sig_.relations.begin());
        }
        for (const auto& t : f.terms()) {
          if (t.is_variable()) {
            auto it = std::find(scope.rbegin(), scope.rend(), t.name);
            n.args.push_back({true, static_cast<std::size_t>(scope.rend() - it - 1)});
          } else {
            auto it = std::lower_bound(sig_.constants.begin(), sig_.constants.end(), t.name);
            n.args.push_back({false, static_cast<std::size_t>(it - sig_.constants.begin())});
          }
        }
        break;
      }
      case Op::Forall:
      case Op::Exists:
        n.slot = scope.size();
        scope.push_back(f.name());
        slots_ = std::max(slots_, scope.size());
        n.a = compile(f.body(), scope);
        scope.pop_back();
        break;
      case Op::Not: n.a = compile(f.lhs(), scope); break;
      default:
        n.a = compile(f.lhs(), scope);
        n.b = compile(f.rhs(), scope);
    }
    nodes_list_.push_back(std::move(n));
    return nodes_list_.size() - 1;
  }

  Element arg_value(const Arg& a) const { return a.is_var ? env_[a.index] : denot_[a.index]; }

  std::int8_t eval(std::size_t id) {
    const Node& n = nodes_list_[id];
    switch (n.op) {
      case Op::Atom: {
        std::size_t idx = 0;
        for (const auto& a : n.args) idx = idx * domain_ + arg_value(a);
        const auto cell = offsets_[n.rel] + idx;
        const auto bit = bits_[cell];
        if (bit >= 0) return bit;
        if (!blocker_) blocker_ = cell;
        return kUnknown;
      }
      case Op::Equal: return arg_value(n.args[0]) == arg_value(n.args[1]) ? kTrue : kFalse;
      case Op::Not: {
        auto v = eval(n.a);
        return v == kUnknown ? kUnknown : static_cast<std::int8_t>(1 - v);
      }
      case Op::And: {
        auto x = eval(n.a);
        if (x == kFalse) return kFalse;
        auto y = eval(n.b);
        if (y == kFalse) return kFalse;
        return (x == kTrue && y == kTrue) ? kTrue : kUnknown;
      }
      case Op::Or: {
        auto x = eval(n.a);
        if (x == kTrue) return kTrue;
        auto y = eval(n.b);
        if (y == kTrue) return kTrue;
        return (x == kFalse && y == kFalse) ? kFalse : kUnknown;
      }
      case Op::Implies: {
        auto x = eval(n.a);
        if (x == kFalse) return kTrue;
        auto y = eval(n.b);
        if (y == kTrue) return kTrue;
        return (x == kTrue && y == kFalse) ? kFalse : kUnknown;
      }
      case Op::Iff: {
        auto x = eval(n.a);
        if (x == kUnknown) return kUnknown;
        auto y = eval(n.b);
        if (y == kUnknown) return kUnknown;
        return x == y ? kTrue : kFalse;
      }
      case Op::Forall:
      case Op::Exists: {
        const bool universal = n.op == Op::Forall;
        bool unknown = false;
        for (Element e = 0; e < domain_; ++e) {
          env_[n.slot] = e;
          auto v = eval(n.a);
          if (universal && v == kFalse) return kFalse;
          if (!universal && v == kTrue) return kTrue;
          if (v == kUnknown) unknown = true;
        }
        if (unknown) return kUnknown;
        return universal ? kTrue : kFalse;
      }
    }
    return kUnknown;
  }

  void tick() {
    if (++nodes_ > guard_) {
      throw Error(ErrorKind::EnumerationGuard,
                  "model search exceeded the guard of " + std::to_string(guard_) + " nodes");
    }
  }

  // Existence only: branch on whichever unknown cell the evaluation hit
  // first. Much smaller trees than the fixed order on unsatisfiable input.
  bool exists_model() {
    tick();
    blocker_.reset();
    const auto v = eval(root_);
    if (v != kUnknown) return v == kTrue;
    const auto cell = *blocker_;
    for (std::int8_t value : {std::int8_t{0}, std::int8_t{1}}) {
      bits_[cell] = value;
      if (exists_model()) {
        bits_[cell] = -1;
        return true;
      }
    }
    bits_[cell] = -1;
    return false;
  }

  // Bits above `remaining` are fixed; try the next most significant bit
  // with 0 first so the first success is the smallest counter value.
  bool descend(std::size_t remaining) {
    tick();
    const auto v = eval(root_);
    if (v == kFalse) return false;
    if (v == kTrue) {
      std::fill(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(remaining), std::int8_t{0});
      return true;
    }
    if (remaining == 0) return false;
    const std::size_t i = remaining - 1;
    for (std::int8_t value : {std::int8_t{0}, std::int8_t{1}}) {
      bits_[i] = value;
      if (descend(i)) return true;
    }
    bits_[i] = -1;
    return false;
  }

  bool search_size(std::size_t d) {
    domain_ = d;
    offsets_.clear();
    std::size_t total = 0;
    for (const auto& [name, arity] : sig_.relations) {
      offsets_.push_back(total);
      std::size_t cells = 1;
      for (std::size_t i = 0; i < arity; ++i) cells *= d;
      total += cells;
    }
    env_.assign(slots_, 0);
    denot_.assign(sig_.constants.size(), 0);
    for (;;) {
      bits_.assign(total, -1);
      if (exists_model()) {
        std::fill(bits_.begin(), bits_.end(), std::int8_t{-1});
        if (descend(total)) return true;
      }
      // Next denotation, first constant fastest.
      std::size_t j = 0;
      for (; j < denot_.size(); ++j) {
        if (++denot_[j] < d) break;
        denot_[j] = 0;
      }
      if (j == denot_.size()) return false;
    }
  }

  FiniteStructure build(std::size_t d) const {
    FiniteStructure s(d);
    for (std::size_t r = 0; r < sig_.relations.size(); ++r) {
      const auto& [name, arity] = sig_.relations[r];
      s.declare_relation(name, arity);
      const std::size_t cells = (r + 1 < offsets_.size() ? offsets_[r + 1] : bits_.size()) - offsets_[r];
      for (std::size_t idx = 0; idx < cells; ++idx) {
        if (bits_[offsets_[r] + idx] != 1) continue;
        Tuple t(arity);
        std::size_t rest = idx;
        for (std::size_t j = arity; j-- > 0;) {
          t[j] = rest % d;
          rest /= d;
        }
        s.add_tuple(name, t);
      }
    }
    for (std::size_t c = 0; c < sig_.constants.size(); ++c) s.set_constant(sig_.constants[c], denot_[c]);
    return s;
  }

  std::uint64_t guard_;
  std::uint64_t nodes_ = 0;
  Signature sig_;
  std::vector<Node> nodes_list_;
  std::size_t root_ = 0;
  std::size_t slots_ = 0;

  std::size_t domain_ = 1;
  std::vector<std::size_t> offsets_;
  std::vector<std::int8_t> bits_;
  std::vector<Element> denot_;
  std::vector<Element> env_;
  std::optional<std::size_t> blocker_;
};

}  // namespace

ModelSearch find_model(const Formula& sentence, std::size_t max_size, std::uint64_t guard) {
  check_sentence(sentence);
  return PrunedSearch(sentence, guard).run(max_size);
}

ModelSearch find_model_naive(const Formula& sentence, std::size_t max_size, std::uint64_t guard) {
  check_sentence(sentence);
  const auto sig = signature_of(sentence);

  bool overflow = false;
  std::uint64_t total = 0;
  for (std::size_t d = 1; d <= max_size && !overflow; ++d) {
    std::uint64_t bits = 0;
    for (const auto& [name, arity] : sig.relations) bits += power(d, arity, overflow);
    if (bits >= 63) overflow = true;
    const auto per = power(d, sig.constants.size(), overflow);
    if (overflow || per > (UINT64_MAX >> bits)) {
      overflow = true;
      break;
    }
    total += per << bits;
  }
  if (overflow || total > guard) {
    throw Error(ErrorKind::EnumerationGuard, "interpretation count exceeds the guard of " + std::to_string(guard));
  }

  ModelSearch out;
  out.max_size = max_size;
  for (std::size_t d = 1; d <= max_size; ++d) {
    std::vector<std::size_t> cells;
    std::size_t nbits = 0;
    for (const auto& [name, arity] : sig.relations) {
      bool unused = false;
      cells.push_back(static_cast<std::size_t>(power(d, arity, unused)));
      nbits += cells.back();
    }
    std::vector<Element> denot(sig.constants.size(), 0);
    for (;;) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nbits); ++mask) {
        ++out.nodes;
        FiniteStructure s(d);
        std::size_t offset = 0;
        for (std::size_t r = 0; r < sig.relations.size(); ++r) {
          const auto& [name, arity] = sig.relations[r];
          s.declare_relation(name, arity);
          for (std::size_t idx = 0; idx < cells[r]; ++idx) {
            if (!((mask >> (offset + idx)) & 1U)) continue;
            Tuple t(arity);
            std::size_t rest = idx;
            for (std::size_t j = arity; j-- > 0;) {
              t[j] = rest % d;
              rest /= d;
            }
            s.add_tuple(name, t);
          }
          offset += cells[r];
        }
        for (std::size_t c = 0; c < denot.size(); ++c) s.set_constant(sig.constants[c], denot[c]);
        if (fo_evaluate(s, {}, sentence)) {
          out.model = std::move(s);
          return out;
        }
      }
      std::size_t j = 0;
      for (; j < denot.size(); ++j) {
        if (++denot[j] < d) break;
        denot[j] = 0;
      }
      if (j == denot.size()) break;
    }
  }
  return out;
}

std::size_t model_bound(const BSExpression& bs) {
  return constant_count(bs.matrix) + bs.exist_vars.size();
}

std::size_t model_bound(const SBSegment& seg) { return constant_count(seg.matrix); }

ModelSearch decide_by_bound(const BSExpression& bs, std::uint64_t guard) {
  return find_model(to_formula(bs), model_bound(bs), guard);
}

ModelSearch decide_by_bound(const SBSegment& seg, std::uint64_t guard) {
  return find_model(to_formula(seg), model_bound(seg), guard);
}

}  // namespace bsat::oracle
