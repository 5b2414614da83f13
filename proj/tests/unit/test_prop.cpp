#include "bsat/dimacs.hpp"
#include "bsat/error.hpp"
#include "bsat/generator.hpp"
#include "bsat/prop.hpp"
#include "doctest.h"

using namespace bsat;
using namespace bsat::prop;

namespace {

PropFormula p(Var i) { return PropFormula::var(i); }
PropFormula neg(PropFormula f) { return PropFormula::negation(std::move(f)); }
PropFormula lor(PropFormula a, PropFormula b) { return PropFormula::disjunction(std::move(a), std::move(b)); }
PropFormula land(PropFormula a, PropFormula b) { return neg(lor(neg(std::move(a)), neg(std::move(b)))); }

Assignment assign(std::initializer_list<std::pair<Var, bool>> values) {
  Assignment b;
  for (auto [v, x] : values) b.set(v, x);
  return b;
}

bool clause_holds(const Clause& c, const Assignment& b) {
  for (auto l : c) {
    if (*b.get(static_cast<Var>(std::abs(l))) == (l > 0)) return true;
  }
  return false;
}

// Every satisfying assignment of the clause set, projected onto 1..keep.
std::set<std::vector<bool>> satisfying_projections(const Cnf& cnf, Var keep) {
  std::set<std::vector<bool>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cnf.num_vars); ++mask) {
    Assignment b;
    for (Var v = 1; v <= cnf.num_vars; ++v) b.set(v, (mask >> (v - 1)) & 1U);
    bool ok = true;
    for (const auto& c : cnf.clauses) ok = ok && clause_holds(c, b);
    if (!ok) continue;
    std::vector<bool> proj;
    for (Var v = 1; v <= keep; ++v) proj.push_back(*b.get(v));
    out.insert(proj);
  }
  return out;
}

std::multiset<std::multiset<Literal>> clause_multiset(const Cnf& cnf) {
  std::multiset<std::multiset<Literal>> out;
  for (const auto& c : cnf.clauses) out.emplace(c.begin(), c.end());
  return out;
}

}  // namespace

TEST_CASE("evaluate") {
  CHECK(evaluate(lor(p(1), neg(p(1))), assign({{1, false}})));
  CHECK(evaluate(neg(lor(p(1), p(2))), assign({{1, false}, {2, false}})));
  CHECK_FALSE(evaluate(neg(lor(p(1), p(2))), assign({{1, true}, {2, false}})));
  try {
    evaluate(p(1), Assignment{});
    FAIL("expected UnassignedVariable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnassignedVariable);
  }
}

TEST_CASE("evaluate depends only on the variables of the formula") {
  gen::Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    const auto f = gen::random_prop(rng, 6, 5);
    const auto vars = pvar(f);
    Assignment a, b;
    for (Var v = 1; v <= 12; ++v) {
      const bool x = rng() & 1U;
      a.set(v, x);
      b.set(v, vars.count(v) ? x : static_cast<bool>(rng() & 1U));
    }
    CHECK(evaluate(f, a) == evaluate(f, b));
  }
}

TEST_CASE("to_cnf keeps clause-shaped input as is") {
  const std::vector<PropFormula> one{p(1)};
  CHECK(to_cnf(one) == Cnf{1, {{1}}});

  const std::vector<PropFormula> flat{lor(p(1), p(2)), neg(p(1))};
  CHECK(to_cnf(flat) == Cnf{2, {{1, 2}, {-1}}});

  // Conjunctions of literals split into unit clauses.
  const std::vector<PropFormula> conj{land(p(1), neg(p(2)))};
  CHECK(to_cnf(conj) == Cnf{2, {{1}, {-2}}});

  // Tautologies are dropped, duplicates merged.
  const std::vector<PropFormula> taut{lor(p(1), neg(p(1))), lor(p(2), p(2))};
  CHECK(to_cnf(taut) == Cnf{2, {{2}}});
}

TEST_CASE("to_cnf of ~(p1 | ~p2) forces p1=F, p2=T") {
  const std::vector<PropFormula> fs{neg(lor(p(1), neg(p(2))))};
  const auto cnf = to_cnf(fs);
  CHECK(satisfying_projections(cnf, 2) == std::set<std::vector<bool>>{{false, true}});
}

TEST_CASE("to_cnf introduces auxiliary variables above the inputs") {
  const std::vector<PropFormula> fs{lor(land(p(1), p(2)), land(neg(p(1)), p(3)))};
  const auto cnf = to_cnf(fs);
  CHECK(cnf.num_vars > 3);
  // Projection equals the models of the original formula.
  std::set<std::vector<bool>> expected;
  for (int mask = 0; mask < 8; ++mask) {
    auto b = assign({{1, (mask & 1) != 0}, {2, (mask & 2) != 0}, {3, (mask & 4) != 0}});
    if (evaluate(fs[0], b)) expected.insert({(mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0});
  }
  CHECK(satisfying_projections(cnf, 3) == expected);
}

TEST_CASE("dpll_solve") {
  CHECK_FALSE(dpll_solve(Cnf{1, {{1}, {-1}}}).sat);

  // Truth table of (p1 | p2) & (~p1 | p2): rows FT and TT, so p2 = T.
  const auto r = dpll_solve(Cnf{2, {{1, 2}, {-1, 2}}});
  REQUIRE(r.sat);
  CHECK(*r.assignment.get(2));

  const auto empty = dpll_solve(Cnf{});
  CHECK(empty.sat);
  CHECK(empty.assignment.extent() == 0);

  CHECK_FALSE(dpll_solve(Cnf{2, {{1}, {}}}).sat);

  // Pigeonhole 3 -> 2 is unsatisfiable.
  Cnf php{6, {{1, 2}, {3, 4}, {5, 6}, {-1, -3}, {-1, -5}, {-3, -5}, {-2, -4}, {-2, -6}, {-4, -6}}};
  CHECK_FALSE(dpll_solve(php).sat);
}

TEST_CASE("dpll_solve is deterministic and prefers true") {
  const auto r = dpll_solve(Cnf{3, {{1, 2, 3}, {-1, -2}, {-1, 2, -3}}});
  REQUIRE(r.sat);
  CHECK(r.assignment == dpll_solve(Cnf{3, {{1, 2, 3}, {-1, -2}, {-1, 2, -3}}}).assignment);
  CHECK(*r.assignment.get(1));
  CHECK_FALSE(*r.assignment.get(2));
  CHECK_FALSE(*r.assignment.get(3));
}

TEST_CASE("truth_table_solve") {
  const std::vector<PropFormula> contradiction{land(p(1), neg(p(1)))};
  CHECK_FALSE(truth_table_solve(contradiction).sat);
  const std::vector<PropFormula> either{lor(p(1), p(2))};
  CHECK(truth_table_solve(either).sat);

  std::vector<PropFormula> wide;
  for (Var v = 1; v <= 25; ++v) wide.push_back(p(v));
  try {
    truth_table_solve(wide);
    FAIL("expected TooManyVariables");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooManyVariables);
  }
}

TEST_CASE("dpll on clause form agrees with the truth table on random formula lists") {
  gen::Rng rng(99);
  for (int i = 0; i < 400; ++i) {
    const Var vars = 1 + rng() % 8;
    std::vector<PropFormula> fs;
    const auto count = 1 + rng() % 5;
    for (std::size_t j = 0; j < count; ++j) fs.push_back(gen::random_prop(rng, vars, 1 + rng() % 5));
    const auto expected = truth_table_solve(fs).sat;
    const auto r = dpll_solve(to_cnf(fs));
    REQUIRE(r.sat == expected);
    if (r.sat) {
      for (const auto& f : fs) CHECK(evaluate(f, r.assignment));
    }
  }
}

TEST_CASE("DIMACS emit and read") {
  const Cnf cnf{2, {{1, -2}, {2}}};
  CHECK(emit_dimacs(cnf) == "p cnf 2 2\n1 -2 0\n2 0\n");
  CHECK(emit_dimacs(Cnf{}) == "p cnf 0 0\n");
  CHECK(emit_dimacs(Cnf{1, {{1}, {}}}).find("\n0\n") != std::string::npos);

  CHECK(read_dimacs("c comment\np cnf 2 2\n1 -2 0\n2 0\n") == cnf);
  CHECK(read_dimacs("p cnf 3 2\n1 2\n 3 0 -1 0\n") == Cnf{3, {{1, 2, 3}, {-1}}});
  CHECK(read_dimacs(emit_dimacs(Cnf{1, {{1}, {}}})) == Cnf{1, {{1}, {}}});
  CHECK_THROWS_AS(read_dimacs("1 2 0\n"), Error);
  CHECK_THROWS_AS(read_dimacs("p cnf 1 1\n2 0\n"), Error);
  CHECK_THROWS_AS(read_dimacs("p cnf 1 2\n1 0\n"), Error);
}

TEST_CASE("DIMACS round trip preserves the clause multiset") {
  gen::Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    std::vector<PropFormula> fs;
    for (int j = 0; j < 4; ++j) fs.push_back(gen::random_prop(rng, 6, 4));
    const auto cnf = to_cnf(fs);
    const auto back = read_dimacs(emit_dimacs(cnf));
    CHECK(back.num_vars == cnf.num_vars);
    CHECK(clause_multiset(back) == clause_multiset(cnf));
  }
}
