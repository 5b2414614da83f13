#include "bsat/generator.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace bsat::gen {

namespace {

// rng() % n keeps the draw sequence identical across standard libraries,
// which std::uniform_int_distribution does not promise.
std::size_t draw(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

bool chance(Rng& rng, unsigned percent) { return draw(rng, 100) < percent; }

constexpr unsigned kLeafPercent = 30;
constexpr int kMaxAttempts = 20000;

struct TreeBuilder {
  const InstanceShape& shape;
  const std::vector<Term>& symbols;
  Rng& rng;

  Formula atom() {
    const auto& [name, arity] = shape.relations[draw(rng, shape.relations.size())];
    std::vector<Term> args;
    for (std::size_t i = 0; i < arity; ++i) args.push_back(symbols[draw(rng, symbols.size())]);
    return Formula::atom(name, std::move(args));
  }

  Formula tree(std::size_t depth) {
    if (depth >= shape.max_depth || (depth > 0 && chance(rng, kLeafPercent))) return atom();
    const auto pick = draw(rng, 4);
    if (pick == 0) return Formula::negation(tree(depth + 1));
    // Left subtree drawn first; argument evaluation order is unspecified.
    auto lhs = tree(depth + 1);
    auto rhs = tree(depth + 1);
    if (pick == 1) return Formula::disjunction(lhs, rhs);
    if (pick == 2) return Formula::conjunction(lhs, rhs);
    return Formula::implication(lhs, rhs);
  }
};

}  // namespace

std::vector<std::string> constant_names(std::size_t m) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < m; ++i) {
    out.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "c" + std::to_string(i));
  }
  return out;
}

BSExpression random_bs(const InstanceShape& shape, Rng& rng) {
  if (shape.relations.empty()) throw std::runtime_error("generator needs at least one relation");
  std::vector<std::string> exist_vars;
  std::vector<std::string> univ_vars;
  std::vector<Term> symbols;
  for (std::size_t i = 1; i <= shape.s; ++i) exist_vars.push_back("x" + std::to_string(i));
  for (std::size_t i = 1; i <= shape.t; ++i) univ_vars.push_back("y" + std::to_string(i));
  for (const auto& v : exist_vars) symbols.push_back(Term::variable(v));
  for (const auto& v : univ_vars) symbols.push_back(Term::variable(v));
  const auto constants = constant_names(shape.m);
  for (const auto& c : constants) symbols.push_back(Term::constant(c));

  std::set<std::string> wanted_vars(exist_vars.begin(), exist_vars.end());
  wanted_vars.insert(univ_vars.begin(), univ_vars.end());

  TreeBuilder builder{shape, symbols, rng};
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Formula matrix = builder.tree(0);
    if (free_of(matrix) != wanted_vars || con_of(matrix).size() != shape.m) continue;
    BSExpression bs{exist_vars, univ_vars, matrix, {}};
    bs.symbols = infer_symbols(to_formula(bs));
    return bs;
  }
  std::ostringstream msg;
  msg << "no valid matrix for m=" << shape.m << " s=" << shape.s << " t=" << shape.t
      << " depth=" << shape.max_depth << " after " << kMaxAttempts << " attempts";
  throw std::runtime_error(msg.str());
}

SBSegment random_segment(InstanceShape shape, Rng& rng) {
  shape.s = 0;
  auto bs = random_bs(shape, rng);
  return SBSegment{bs.univ_vars, bs.matrix, bs.symbols};
}

std::vector<std::pair<std::string, std::size_t>> parse_signature(const std::string& text) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto slash = item.find('/');
    if (slash == std::string::npos || slash == 0 || !std::isupper(static_cast<unsigned char>(item[0]))) {
      throw std::invalid_argument("relation signature entries look like P/1, got '" + item + "'");
    }
    const auto arity = std::stoul(item.substr(slash + 1));
    if (arity == 0) throw std::invalid_argument("relation arity must be at least 1");
    out.emplace_back(item.substr(0, slash), arity);
  }
  if (out.empty()) throw std::invalid_argument("empty relation signature");
  return out;
}

prop::PropFormula random_prop(Rng& rng, prop::Var max_var, std::size_t max_depth) {
  using P = prop::PropFormula;
  auto leaf = [&] { return P::var(static_cast<prop::Var>(1 + draw(rng, max_var))); };
  if (max_depth == 0 || chance(rng, kLeafPercent)) return leaf();
  switch (draw(rng, 3)) {
    case 0: return P::negation(random_prop(rng, max_var, max_depth - 1));
    case 1: {
      auto a = random_prop(rng, max_var, max_depth - 1);
      auto b = random_prop(rng, max_var, max_depth - 1);
      return P::disjunction(a, b);
    }
    default: {
      auto a = random_prop(rng, max_var, max_depth - 1);
      auto b = random_prop(rng, max_var, max_depth - 1);
      return P::negation(P::disjunction(P::negation(a), P::negation(b)));
    }
  }
}

}  // namespace bsat::gen
