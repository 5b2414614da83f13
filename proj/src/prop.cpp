#include "bsat/prop.hpp"

#include <algorithm>
#include <cstdlib>

#include "bsat/error.hpp"

namespace bsat::prop {

PropFormula PropFormula::var(Var index) {
  return PropFormula(std::make_shared<const Node>(Node{Op::Var, index, {}}));
}

PropFormula PropFormula::negation(PropFormula f) {
  return PropFormula(std::make_shared<const Node>(Node{Op::Not, 0, {std::move(f)}}));
}

PropFormula PropFormula::disjunction(PropFormula lhs, PropFormula rhs) {
  return PropFormula(std::make_shared<const Node>(Node{Op::Or, 0, {std::move(lhs), std::move(rhs)}}));
}

bool operator==(const PropFormula& a, const PropFormula& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->op == b.node_->op && a.node_->index == b.node_->index &&
         a.node_->children == b.node_->children;
}

std::string to_string(const PropFormula& f) {
  switch (f.op()) {
    case PropFormula::Op::Var: return "p" + std::to_string(f.index());
    case PropFormula::Op::Not: {
      const bool parens = f.lhs().op() == PropFormula::Op::Or;
      return "~" + (parens ? "(" + to_string(f.lhs()) + ")" : to_string(f.lhs()));
    }
    case PropFormula::Op::Or: {
      // | is associative, but keep the tree visible on the right.
      const bool rparens = f.rhs().op() == PropFormula::Op::Or;
      return to_string(f.lhs()) + " | " + (rparens ? "(" + to_string(f.rhs()) + ")" : to_string(f.rhs()));
    }
  }
  return {};
}

namespace {

void collect_pvar(const PropFormula& f, std::set<Var>& out) {
  switch (f.op()) {
    case PropFormula::Op::Var: out.insert(f.index()); return;
    case PropFormula::Op::Not: collect_pvar(f.lhs(), out); return;
    case PropFormula::Op::Or:
      collect_pvar(f.lhs(), out);
      collect_pvar(f.rhs(), out);
      return;
  }
}

}  // namespace

std::set<Var> pvar(const PropFormula& f) {
  std::set<Var> out;
  collect_pvar(f, out);
  return out;
}

void Assignment::set(Var v, bool value) {
  if (v >= values_.size()) values_.resize(v + 1, -1);
  values_[v] = value ? 1 : 0;
}

std::optional<bool> Assignment::get(Var v) const {
  if (v >= values_.size() || values_[v] < 0) return std::nullopt;
  return values_[v] == 1;
}

bool evaluate(const PropFormula& f, const Assignment& b) {
  switch (f.op()) {
    case PropFormula::Op::Var: {
      auto v = b.get(f.index());
      if (!v) throw Error(ErrorKind::UnassignedVariable, "p" + std::to_string(f.index()) + " is unassigned");
      return *v;
    }
    case PropFormula::Op::Not: return !evaluate(f.lhs(), b);
    case PropFormula::Op::Or: return evaluate(f.lhs(), b) || evaluate(f.rhs(), b);
  }
  return false;
}

Var max_var(std::span<const PropFormula> fs) {
  Var n = 0;
  for (const auto& f : fs) {
    for (Var v : pvar(f)) n = std::max(n, v);
  }
  return n;
}

namespace {

std::optional<Literal> literal_of(const PropFormula& f) {
  switch (f.op()) {
    case PropFormula::Op::Var: return static_cast<Literal>(f.index());
    case PropFormula::Op::Not: {
      auto inner = literal_of(f.lhs());
      if (!inner) return std::nullopt;
      return -*inner;
    }
    case PropFormula::Op::Or: return std::nullopt;
  }
  return std::nullopt;
}

void flatten_or(const PropFormula& f, std::vector<const PropFormula*>& out) {
  if (f.op() == PropFormula::Op::Or) {
    flatten_or(f.lhs(), out);
    flatten_or(f.rhs(), out);
  } else {
    out.push_back(&f);
  }
}

std::optional<Clause> clause_of(const PropFormula& f) {
  std::vector<const PropFormula*> parts;
  flatten_or(f, parts);
  Clause c;
  for (const auto* p : parts) {
    auto lit = literal_of(*p);
    if (!lit) return std::nullopt;
    c.push_back(*lit);
  }
  return c;
}

// Splits ~(~a | ~b) and ~~a shapes into their conjuncts, each with a
// polarity flag so no new nodes are built.
void collect_conjuncts(const PropFormula& f, bool negated,
                       std::vector<std::pair<const PropFormula*, bool>>& out) {
  if (f.op() == PropFormula::Op::Not) {
    collect_conjuncts(f.lhs(), !negated, out);
    return;
  }
  if (negated && f.op() == PropFormula::Op::Or) {
    collect_conjuncts(f.lhs(), true, out);
    collect_conjuncts(f.rhs(), true, out);
    return;
  }
  out.emplace_back(&f, negated);
}

class TseitinEncoder {
 public:
  TseitinEncoder(Cnf& cnf) : cnf_(cnf) {}

  Literal encode(const PropFormula& f) {
    switch (f.op()) {
      case PropFormula::Op::Var: return static_cast<Literal>(f.index());
      case PropFormula::Op::Not: return -encode(f.lhs());
      case PropFormula::Op::Or: break;
    }
    std::vector<const PropFormula*> parts;
    flatten_or(f, parts);
    Clause lits;
    for (const auto* p : parts) lits.push_back(encode(*p));
    const auto aux = static_cast<Literal>(++cnf_.num_vars);
    // aux <-> (l1 | ... | lk)
    Clause big{-aux};
    big.insert(big.end(), lits.begin(), lits.end());
    cnf_.clauses.push_back(std::move(big));
    for (Literal l : lits) cnf_.clauses.push_back({aux, -l});
    return aux;
  }

 private:
  Cnf& cnf_;
};

// Drop duplicates; return false for a tautology.
bool normalize(Clause& c) {
  Clause out;
  for (Literal l : c) {
    if (std::find(out.begin(), out.end(), -l) != out.end()) return false;
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  }
  c = std::move(out);
  return true;
}

}  // namespace

Cnf to_cnf(std::span<const PropFormula> fs) {
  Cnf cnf;
  cnf.num_vars = max_var(fs);
  TseitinEncoder enc(cnf);
  std::vector<Clause> raw;
  for (const auto& f : fs) {
    std::vector<std::pair<const PropFormula*, bool>> conjuncts;
    collect_conjuncts(f, false, conjuncts);
    for (const auto& [g, negated] : conjuncts) {
      if (!negated) {
        if (auto c = clause_of(*g)) {
          cnf.clauses.push_back(std::move(*c));
          continue;
        }
      } else if (g->op() == PropFormula::Op::Var) {
        cnf.clauses.push_back({-static_cast<Literal>(g->index())});
        continue;
      }
      const Literal root = enc.encode(*g);
      cnf.clauses.push_back({negated ? -root : root});
    }
  }
  std::vector<Clause> kept;
  kept.reserve(cnf.clauses.size());
  for (auto& c : cnf.clauses) {
    if (normalize(c)) kept.push_back(std::move(c));
  }
  cnf.clauses = std::move(kept);
  return cnf;
}

namespace {

class Dpll {
 public:
  explicit Dpll(const Cnf& cnf) : n_(cnf.num_vars) {
    value_.assign(n_ + 1, -1);
    occurs_.resize(2 * (n_ + 1));
    active_.assign(2 * (n_ + 1), 0);
    for (const auto& raw : cnf.clauses) {
      Clause c = raw;
      if (!normalize(c)) continue;
      const auto id = static_cast<std::uint32_t>(clauses_.size());
      for (Literal l : c) {
        occurs_[slot(l)].push_back(id);
        ++active_[slot(l)];
      }
      if (c.empty()) has_empty_ = true;
      if (c.size() == 1) units_.push_back(id);
      clauses_.push_back(std::move(c));
    }
    sat_count_.assign(clauses_.size(), 0);
    false_count_.assign(clauses_.size(), 0);
  }

  SolveResult run() {
    if (has_empty_) return {};
    propagate();
    if (conflict_) return {};
    for (;;) {
      if (conflict_) {
        if (!backtrack()) return {};
        propagate();
        continue;
      }
      assign_pure_literals();
      propagate();
      if (conflict_) continue;
      if (satisfied_ == clauses_.size()) return model();
      const Var v = pick();
      decisions_.push_back({static_cast<Literal>(v), false});
      levels_.push_back(trail_.size());
      assign(static_cast<Literal>(v));
      propagate();
    }
  }

 private:
  struct Decision {
    Literal lit;
    bool flipped;
  };

  static std::size_t slot(Literal l) {
    return 2 * static_cast<std::size_t>(std::abs(l)) + (l < 0 ? 1 : 0);
  }

  std::int8_t lit_value(Literal l) const {
    const auto v = value_[static_cast<std::size_t>(std::abs(l))];
    if (v < 0) return -1;
    return (l > 0) == (v == 1) ? 1 : 0;
  }

  void assign(Literal l) {
    value_[static_cast<std::size_t>(std::abs(l))] = l > 0 ? 1 : 0;
    trail_.push_back(l);
    for (auto c : occurs_[slot(l)]) {
      if (sat_count_[c]++ == 0) {
        ++satisfied_;
        for (Literal x : clauses_[c]) --active_[slot(x)];
      }
    }
    for (auto c : occurs_[slot(-l)]) {
      ++false_count_[c];
      if (sat_count_[c] > 0) continue;
      if (false_count_[c] == clauses_[c].size()) conflict_ = true;
      else if (false_count_[c] + 1 == clauses_[c].size()) units_.push_back(c);
    }
  }

  void unassign(Literal l) {
    for (auto c : occurs_[slot(-l)]) --false_count_[c];
    for (auto c : occurs_[slot(l)]) {
      if (--sat_count_[c] == 0) {
        --satisfied_;
        for (Literal x : clauses_[c]) ++active_[slot(x)];
      }
    }
    value_[static_cast<std::size_t>(std::abs(l))] = -1;
  }

  void propagate() {
    while (!conflict_ && !units_.empty()) {
      const auto c = units_.back();
      units_.pop_back();
      if (sat_count_[c] > 0) continue;
      Literal free = 0;
      for (Literal l : clauses_[c]) {
        if (lit_value(l) < 0) {
          free = l;
          break;
        }
      }
      if (free == 0) {
        conflict_ = true;
        break;
      }
      assign(free);
    }
    if (conflict_) units_.clear();
  }

  void assign_pure_literals() {
    for (Var v = 1; v <= n_; ++v) {
      if (value_[v] >= 0) continue;
      const auto pos = active_[slot(static_cast<Literal>(v))];
      const auto neg = active_[slot(-static_cast<Literal>(v))];
      if (pos > 0 && neg == 0) assign(static_cast<Literal>(v));
      else if (neg > 0 && pos == 0) assign(-static_cast<Literal>(v));
    }
  }

  // Smallest unassigned variable still occurring in an unsatisfied clause.
  Var pick() const {
    for (Var v = 1; v <= n_; ++v) {
      if (value_[v] < 0 && active_[slot(static_cast<Literal>(v))] + active_[slot(-static_cast<Literal>(v))] > 0) {
        return v;
      }
    }
    return 0;
  }

  bool backtrack() {
    conflict_ = false;
    units_.clear();
    while (!decisions_.empty()) {
      auto& d = decisions_.back();
      const auto start = levels_.back();
      while (trail_.size() > start) {
        unassign(trail_.back());
        trail_.pop_back();
      }
      if (!d.flipped) {
        d.flipped = true;
        assign(-d.lit);
        return true;
      }
      decisions_.pop_back();
      levels_.pop_back();
    }
    return false;
  }

  SolveResult model() const {
    SolveResult r;
    r.sat = true;
    for (Var v = 1; v <= n_; ++v) r.assignment.set(v, value_[v] == 1);
    return r;
  }

  Var n_;
  std::vector<Clause> clauses_;
  std::vector<std::vector<std::uint32_t>> occurs_;
  std::vector<std::uint32_t> active_;
  std::vector<std::uint32_t> sat_count_;
  std::vector<std::uint32_t> false_count_;
  std::vector<std::int8_t> value_;
  std::vector<Literal> trail_;
  std::vector<std::size_t> levels_;
  std::vector<Decision> decisions_;
  std::vector<std::uint32_t> units_;
  std::size_t satisfied_ = 0;
  bool conflict_ = false;
  bool has_empty_ = false;
};

}  // namespace

SolveResult dpll_solve(const Cnf& cnf) { return Dpll(cnf).run(); }

SolveResult truth_table_solve(std::span<const PropFormula> fs) {
  std::set<Var> all;
  for (const auto& f : fs) all.merge(pvar(f));
  if (all.size() > kTruthTableMaxVars) {
    throw Error(ErrorKind::TooManyVariables,
                std::to_string(all.size()) + " variables exceed the truth-table limit of " +
                    std::to_string(kTruthTableMaxVars));
  }
  const std::vector<Var> vars(all.begin(), all.end());
  const std::uint64_t rows = std::uint64_t{1} << vars.size();
  for (std::uint64_t mask = 0; mask < rows; ++mask) {
    Assignment b;
    for (std::size_t i = 0; i < vars.size(); ++i) b.set(vars[i], (mask >> i) & 1U);
    const bool ok = std::all_of(fs.begin(), fs.end(), [&](const PropFormula& f) { return evaluate(f, b); });
    if (ok) return {true, b};
  }
  return {};
}

}  // namespace bsat::prop
