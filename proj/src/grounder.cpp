#include "bsat/grounder.hpp"

#include <algorithm>

#include "bsat/error.hpp"
#include "bsat/text.hpp"

namespace bsat {

std::string_view to_string(WitnessPolicy p) {
  return p == WitnessPolicy::Skolem ? "skolem" : "paper-literal";
}

std::optional<WitnessPolicy> parse_policy(std::string_view name) {
  if (name == "skolem") return WitnessPolicy::Skolem;
  if (name == "paper-literal") return WitnessPolicy::PaperLiteral;
  return std::nullopt;
}

std::vector<std::string> HerbrandUniverse::elements() const {
  std::vector<std::string> out = constants;
  out.insert(out.end(), skolem_constants.begin(), skolem_constants.end());
  return out;
}

std::string skolem_name(std::size_t i) { return "_sk" + std::to_string(i); }

namespace {

constexpr std::string_view kSkolemPrefix = "_sk";

bool is_skolem(const std::string& name) { return name.rfind(kSkolemPrefix, 0) == 0; }

std::string fresh_a0(const SymbolTable& symbols) {
  std::string name = "a0";
  while (symbols.variables.count(name) || symbols.has_constant(name)) name += "_";
  return name;
}

HerbrandUniverse universe_from(const Formula& matrix, const SymbolTable& symbols) {
  HerbrandUniverse u;
  std::vector<std::pair<std::size_t, std::string>> skolems;
  for (const auto& c : con_of(matrix)) {
    if (is_skolem(c)) {
      skolems.emplace_back(std::stoul(c.substr(kSkolemPrefix.size())), c);
    } else {
      u.constants.push_back(c);
    }
  }
  std::sort(skolems.begin(), skolems.end());
  for (auto& [idx, name] : skolems) u.skolem_constants.push_back(std::move(name));
  if (u.size() == 0) {
    u.constants.push_back(fresh_a0(symbols));
    u.auto_added_a0 = true;
  }
  return u;
}

Term substitute_partial(const Term& t, const std::map<std::string, std::string>& sub) {
  switch (t.kind) {
    case Term::Kind::Variable: {
      auto it = sub.find(t.name);
      return it == sub.end() ? t : Term::constant(it->second);
    }
    case Term::Kind::Constant: return t;
    case Term::Kind::Function: {
      std::vector<Term> args;
      for (const auto& a : t.args) args.push_back(substitute_partial(a, sub));
      return Term::function(t.name, std::move(args));
    }
  }
  return t;
}

Formula substitute_partial(const Formula& f, const std::map<std::string, std::string>& sub) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Equal: {
      std::vector<Term> terms;
      for (const auto& t : f.terms()) terms.push_back(substitute_partial(t, sub));
      if (f.op() == Op::Equal) return Formula::equal(terms[0], terms[1]);
      return Formula::atom(f.name(), std::move(terms));
    }
    case Op::Not: return Formula::negation(substitute_partial(f.lhs(), sub));
    case Op::Forall:
    case Op::Exists:
      throw Error(ErrorKind::NotQuantifierFree, "matrix contains a quantifier");
    default:
      return Formula::binary(f.op(), substitute_partial(f.lhs(), sub), substitute_partial(f.rhs(), sub));
  }
}

}  // namespace

HerbrandUniverse herbrand_universe(const SBSegment& seg) {
  return universe_from(seg.matrix, seg.symbols);
}

HerbrandUniverse herbrand_universe(const BSExpression& bs, WitnessPolicy policy) {
  HerbrandUniverse u;
  for (const auto& c : con_of(bs.matrix)) u.constants.push_back(c);
  if (policy == WitnessPolicy::Skolem) {
    for (std::size_t i = 1; i <= bs.exist_vars.size(); ++i) u.skolem_constants.push_back(skolem_name(i));
  }
  if (u.size() == 0) {
    u.constants.push_back(fresh_a0(bs.symbols));
    u.auto_added_a0 = true;
  }
  return u;
}

SBSegment instantiate_witnesses(const BSExpression& bs, const std::vector<std::string>& witnesses) {
  std::map<std::string, std::string> sub;
  for (std::size_t i = 0; i < bs.exist_vars.size(); ++i) sub.emplace(bs.exist_vars[i], witnesses.at(i));
  SBSegment seg{bs.univ_vars, substitute_partial(bs.matrix, sub), bs.symbols};
  for (const auto& x : bs.exist_vars) seg.symbols.variables.erase(x);
  for (const auto& w : witnesses) seg.symbols.add_constant(w);
  return seg;
}

SBSegment skolemize(const BSExpression& bs) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= bs.exist_vars.size(); ++i) names.push_back(skolem_name(i));
  return instantiate_witnesses(bs, names);
}

std::optional<std::uint64_t> instance_count(std::size_t universe_size, std::size_t t) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < t; ++i) {
    if (universe_size != 0 && n > UINT64_MAX / universe_size) return std::nullopt;
    n *= universe_size;
  }
  return n;
}

GroundInstanceSet ground(const SBSegment& seg, const HerbrandUniverse& universe, std::uint64_t cap) {
  const auto elems = universe.elements();
  const std::size_t t = seg.univ_vars.size();
  const auto count = instance_count(elems.size(), t);
  if (!count || *count > cap) {
    throw Error(ErrorKind::ExplosionGuard,
                std::to_string(elems.size()) + "^" + std::to_string(t) +
                    " ground instances exceed the cap of " + std::to_string(cap));
  }

  GroundInstanceSet gis;
  gis.instances.reserve(*count);
  std::vector<std::size_t> digits(t, 0);
  std::map<std::string, std::string> sub;
  for (std::uint64_t i = 0; i < *count; ++i) {
    std::vector<std::string> tuple;
    tuple.reserve(t);
    for (std::size_t j = 0; j < t; ++j) {
      tuple.push_back(elems[digits[j]]);
      sub[seg.univ_vars[j]] = elems[digits[j]];
    }
    gis.instances.push_back({std::move(tuple), substitute_ground(seg.matrix, sub)});
    // Odometer, last position fastest.
    for (std::size_t j = t; j-- > 0;) {
      if (++digits[j] < elems.size()) break;
      digits[j] = 0;
    }
  }
  return gis;
}

std::string ground_set_text(const GroundInstanceSet& gis) {
  std::string out;
  for (const auto& inst : gis.instances) {
    out += pretty_print(inst.formula);
    out += '\n';
  }
  return out;
}

prop::Var AtomTable::intern(const Formula& atom) {
  auto key = pretty_print(atom);
  auto [it, inserted] = forward_.emplace(std::move(key), static_cast<prop::Var>(backward_.size() + 1));
  if (inserted) backward_.push_back(atom);
  return it->second;
}

std::optional<prop::Var> AtomTable::find(const Formula& atom) const {
  auto it = forward_.find(pretty_print(atom));
  if (it == forward_.end()) return std::nullopt;
  return it->second;
}

namespace {

using prop::PropFormula;

PropFormula translate(const Formula& f, AtomTable& atoms) {
  switch (f.op()) {
    case Op::Atom:
      for (const auto& t : f.terms()) {
        if (!t.is_constant()) {
          throw Error(ErrorKind::NotQuantifierFree, "atom " + pretty_print(f) + " is not ground");
        }
      }
      return PropFormula::var(atoms.intern(f));
    case Op::Equal:
      throw Error(ErrorKind::NotInFragment, "equality has no propositional translation");
    case Op::Forall:
    case Op::Exists:
      throw Error(ErrorKind::NotQuantifierFree, "quantifier in a ground instance");
    case Op::Not: return PropFormula::negation(translate(f.lhs(), atoms));
    default: break;
  }
  // Translate left to right so first occurrence fixes the index.
  auto a = translate(f.lhs(), atoms);
  auto b = translate(f.rhs(), atoms);
  using P = PropFormula;
  switch (f.op()) {
    case Op::Or: return P::disjunction(a, b);
    case Op::And: return P::negation(P::disjunction(P::negation(a), P::negation(b)));
    case Op::Implies: return P::disjunction(P::negation(a), b);
    case Op::Iff:
      return P::disjunction(P::negation(P::disjunction(a, b)),
                            P::negation(P::disjunction(P::negation(a), P::negation(b))));
    default: break;
  }
  throw Error(ErrorKind::NotInFragment, "unexpected connective");
}

}  // namespace

Translation pi_translate(const GroundInstanceSet& gis) {
  Translation out;
  out.formulas.reserve(gis.instances.size());
  for (const auto& inst : gis.instances) out.formulas.push_back(translate(inst.formula, out.atoms));
  return out;
}

Formula rho(const prop::PropFormula& f, const AtomTable& atoms) {
  switch (f.op()) {
    case prop::PropFormula::Op::Var: return atoms.atom(f.index());
    case prop::PropFormula::Op::Not: return Formula::negation(rho(f.lhs(), atoms));
    case prop::PropFormula::Op::Or: return Formula::disjunction(rho(f.lhs(), atoms), rho(f.rhs(), atoms));
  }
  return atoms.atom(f.index());
}

}  // namespace bsat
