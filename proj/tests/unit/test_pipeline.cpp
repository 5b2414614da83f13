#include <map>

#include "bsat/error.hpp"
#include "bsat/generator.hpp"
#include "bsat/pipeline.hpp"
#include "bsat/text.hpp"
#include "doctest.h"

using namespace bsat;

namespace {

PipelineOptions checked(WitnessPolicy policy = WitnessPolicy::Skolem) {
  PipelineOptions o;
  o.policy = policy;
  o.oracle_check = true;
  o.keep_artifacts = true;
  return o;
}

}  // namespace

TEST_CASE("two-constant segment grounds to four instances and agrees with the oracle") {
  const auto r = run_pipeline("forall y1 y2 . R(y1,y2) | ~R(y2,a) | P(b)", checked());
  CHECK(r.input_class == FragmentClass::SBS);
  CHECK(r.m == 2);
  CHECK(r.t == 2);
  CHECK(r.ground_count == 4);
  CHECK(r.sat);
  REQUIRE(r.oracle_sat);
  CHECK(r.agrees_with_oracle());
  CHECK(std::count(r.ground_set.begin(), r.ground_set.end(), '\n') == 4);
  CHECK(r.dimacs.find("p cnf") != std::string::npos);
}

TEST_CASE("witness policies on exists x . P(x) & ~P(a)") {
  const auto text = "exists x . P(x) & ~P(a)";
  const auto literal = run_pipeline(text, checked(WitnessPolicy::PaperLiteral));
  CHECK_FALSE(literal.sat);
  CHECK(literal.oracle_sat == true);
  CHECK_FALSE(literal.agrees_with_oracle());

  const auto sk = run_pipeline(text, checked(WitnessPolicy::Skolem));
  CHECK(sk.sat);
  CHECK(sk.agrees_with_oracle());
  CHECK(sk.witness_constants == std::vector<std::string>{"_sk1"});
}

TEST_CASE("padded and unpadded runs give the same verdict") {
  gen::Rng rng(77);
  for (int i = 0; i < 20; ++i) {
    gen::InstanceShape shape{1 + rng() % 2, 0, 1 + rng() % 2, {{"P", 1}, {"R", 2}}, 3};
    const auto text = pretty_print(to_formula(gen::random_segment(shape, rng)));
    if (text.size() > 20) continue;
    PipelineOptions plain;
    PipelineOptions padded;
    padded.padded = true;
    const auto blob = pad(text, 1).serialize();
    const auto a = run_pipeline(text, plain);
    const auto b = run_pipeline(blob, padded);
    CHECK(a.sat == b.sat);
    CHECK(b.n == text.size());
    CHECK(b.padded_length == blob.size());
  }
}

TEST_CASE("malformed padded input fails in the unpad stage") {
  PipelineOptions o;
  o.padded = true;
  try {
    run_pipeline("P(a)###", o);
    FAIL("expected MalformedPadding");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedPadding);
    CHECK(e.stage() == "unpad");
  }
}

TEST_CASE("general formulas are refused at classification") {
  try {
    run_pipeline("forall y . y = a", PipelineOptions{});
    FAIL("expected NotInFragment");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInFragment);
    CHECK(e.stage() == "classify");
  }
}

TEST_CASE("comments are stripped by the loader") {
  const auto r = run_pipeline("# header\nforall y . P(y) | ~P(a)  # tail\n", PipelineOptions{});
  CHECK(r.sat);
  CHECK(r.ground_count == 1);
}

TEST_CASE("report json") {
  const auto r = run_pipeline("forall y . P(y) & ~P(a)", checked());
  const auto j = to_json(r);
  CHECK(j.at("class") == "SBS");
  CHECK(j.at("policy") == "skolem");
  CHECK(j.at("verdict") == "UNSAT");
  CHECK(j.at("ground_count") == 1);
  CHECK(j.at("oracle").at("verdict") == "UNSAT");
  CHECK(j.at("oracle").at("agreement") == true);
  CHECK(j.contains("timings_ms"));
  CHECK_FALSE(j.contains("witness"));

  const auto s = run_pipeline("forall y . P(y) | ~P(a)", checked());
  const auto js = to_json(s);
  CHECK(js.at("verdict") == "SAT");
  REQUIRE(js.contains("witness"));
  CHECK(js.at("oracle").at("model").at("domain_size") == 1);
}

TEST_CASE("witness for forall y . P(y) | Q(a) makes one disjunct true") {
  const auto r = run_pipeline("forall y . P(y) | Q(a)", checked());
  REQUIRE(r.sat);
  CHECK(r.oracle_sat == true);
  std::map<std::string, bool> w(r.witness.begin(), r.witness.end());
  CHECK((w.at("P(a)") || w.at("Q(a)")));
}

TEST_CASE("literal-literal SAT implies oracle SAT; skolem agrees both ways") {
  gen::Rng rng(404);
  for (int i = 0; i < 150; ++i) {
    gen::InstanceShape shape{1 + rng() % 2, 1 + rng() % 2, 1 + rng() % 2, {{"P", 1}, {"R", 2}}, 4};
    const auto text = pretty_print(to_formula(gen::random_bs(shape, rng)));
    INFO(text);
    const auto literal = run_pipeline(text, checked(WitnessPolicy::PaperLiteral));
    const auto sk = run_pipeline(text, checked(WitnessPolicy::Skolem));
    REQUIRE(literal.oracle_sat);
    if (literal.sat) CHECK(*literal.oracle_sat);
    CHECK(sk.agrees_with_oracle());
  }
}
