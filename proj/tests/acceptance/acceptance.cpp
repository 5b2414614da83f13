// Acceptance run: one PASS/FAIL line per check, nonzero exit if any fails.
//
//   acceptance [--readme PATH] [--seed N]

#include <chrono>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bsat/dimacs.hpp"
#include "bsat/error.hpp"
#include "bsat/generator.hpp"
#include "bsat/grounder.hpp"
#include "bsat/oracle.hpp"
#include "bsat/padding.hpp"
#include "bsat/pipeline.hpp"
#include "bsat/text.hpp"

using namespace bsat;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const std::vector<std::pair<std::string, std::size_t>> kRelationPool{{"P", 1}, {"Q", 1}, {"R", 2}, {"S", 2}};

std::vector<std::pair<std::string, std::size_t>> random_signature(gen::Rng& rng) {
  auto pool = kRelationPool;
  const auto keep = 1 + rng() % 3;
  std::vector<std::pair<std::string, std::size_t>> out;
  while (out.size() < keep) {
    const auto i = rng() % pool.size();
    out.push_back(pool[i]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool solve_by_grounding(const SBSegment& seg) {
  const auto gis = ground(seg, herbrand_universe(seg));
  const auto tr = pi_translate(gis);
  return prop::dpll_solve(prop::to_cnf(tr.formulas)).sat;
}

struct CorpusEntry {
  SBSegment seg;
  std::size_t m;
};

std::string compact(std::string text) {
  for (const char* op : {" <-> ", " -> ", " | ", " & "}) {
    const std::string from(op);
    std::string to = from.substr(1, from.size() - 2);
    for (auto pos = text.find(from); pos != std::string::npos; pos = text.find(from, pos + to.size())) {
      text.replace(pos, from.size(), to);
    }
  }
  for (auto pos = text.find(" . "); pos != std::string::npos; pos = text.find(" . ", pos)) text.replace(pos, 3, ".");
  return text;
}

void sbs_against_oracle(std::uint64_t seed, std::vector<CorpusEntry>& corpus) {
  gen::Rng rng(seed);
  const auto start = Clock::now();
  std::size_t agree = 0, sat = 0;
  const std::size_t total = 600;
  std::size_t drawn = 0;
  for (std::size_t i = 0; i < total;) {
    ++drawn;
    const auto m = 1 + rng() % 3;
    const auto t = 1 + rng() % 3;
    const auto depth = 1 + rng() % 4;
    const auto sig = random_signature(rng);
    gen::InstanceShape shape{m, 0, t, sig, depth};
    std::optional<SBSegment> seg;
    try {
      seg = gen::random_segment(shape, rng);
    } catch (const std::runtime_error&) {
      // Too shallow for m constants and t variables: deepen.
      shape.max_depth = 4;
      seg = gen::random_segment(shape, rng);
    }
    const auto oracle = oracle::decide_by_bound(*seg);
    // Random matrices are mostly satisfiable; keep at least a quarter UNSAT.
    if (oracle.sat() && 4 * (sat + 1) > 3 * total) continue;
    ++i;
    const bool ours = solve_by_grounding(*seg);
    if (ours == oracle.sat()) ++agree;
    if (oracle.sat()) ++sat;
    corpus.push_back({*seg, m});
  }
  const auto secs = seconds_since(start);
  std::ostringstream d;
  d << agree << "/" << total << " agree (" << sat << " SAT, " << total - sat << " UNSAT, " << drawn << " drawn), "
    << secs << " s";
  report(agree == total && total >= 500 && secs < 60.0, "sbs-grounding-matches-bounded-model-search", d.str());
}

void ground_set_sizes(std::uint64_t seed) {
  gen::Rng rng(seed);
  std::size_t ok = 0, cells = 0;
  std::ostringstream bad;
  for (std::size_t m = 1; m <= 4; ++m) {
    for (std::size_t t = 1; t <= 4; ++t) {
      ++cells;
      gen::InstanceShape shape{m, 0, t, {{"P", 1}, {"R", 2}}, 5};
      const auto seg = gen::random_segment(shape, rng);
      const auto gis = ground(seg, herbrand_universe(seg));
      std::uint64_t expected = 1;
      for (std::size_t i = 0; i < t; ++i) expected *= m;
      if (gis.instances.size() == expected) {
        ++ok;
      } else {
        bad << " (m=" << m << ",t=" << t << ": " << gis.instances.size() << ")";
      }
    }
  }
  std::ostringstream d;
  d << ok << "/" << cells << " (m,t) cells give m^t instances" << bad.str();
  report(ok == cells, "ground-set-size", d.str());
}

void bs_skolem_against_oracle(std::uint64_t seed) {
  gen::Rng rng(seed);
  std::size_t agree = 0, sat = 0;
  const std::size_t total = 250;
  for (std::size_t i = 0; i < total;) {
    const auto m = 1 + rng() % 2;
    const auto s = 1 + rng() % 2;
    const auto t = 1 + rng() % 2;
    gen::InstanceShape shape{m, s, t, {{"P", 1}, {"R", 2}}, 4};
    const auto bs = gen::random_bs(shape, rng);
    const auto oracle = oracle::find_model(to_formula(bs), m + s);
    if (oracle.sat() && 4 * (sat + 1) > 3 * total) continue;
    ++i;
    const bool ours = solve_by_grounding(skolemize(bs));
    if (ours == oracle.sat()) ++agree;
    if (oracle.sat()) ++sat;
  }
  std::ostringstream d;
  d << agree << "/" << total << " agree (" << sat << " SAT, " << total - sat << " UNSAT), domain sizes up to m+s";
  report(agree == total, "bs-skolem-matches-bounded-model-search", d.str());
}

void small_models(const std::vector<CorpusEntry>& corpus) {
  std::size_t sat = 0, small = 0;
  for (const auto& e : corpus) {
    // Search well past m; the first model found must still fit in m.
    const auto r = oracle::find_model(to_formula(e.seg), e.m + 1);
    if (!r.sat()) continue;
    ++sat;
    if (r.model->domain_size() <= e.m && oracle::fo_evaluate(*r.model, {}, to_formula(e.seg))) ++small;
  }
  std::ostringstream d;
  d << small << "/" << sat << " satisfiable instances have a model of size <= m";
  report(sat > 0 && small == sat, "sbs-small-model", d.str());
}

void witness_policies() {
  const std::string text = "exists x . P(x) & ~P(a)";
  PipelineOptions literal;
  literal.policy = WitnessPolicy::PaperLiteral;
  PipelineOptions skolem;
  const auto p = run_pipeline(text, literal);
  const auto s = run_pipeline(text, skolem);
  const auto loaded = load_formula(text);
  const auto o = oracle::decide_by_bound(*loaded.classification.bs);
  std::ostringstream d;
  d << "paper-literal " << (p.sat ? "SAT" : "UNSAT") << ", skolem " << (s.sat ? "SAT" : "UNSAT") << ", oracle "
    << (o.sat() ? "SAT" : "UNSAT");
  report(!p.sat && s.sat && o.sat(), "witness-policy-divergence", d.str());
}

void propositional(std::uint64_t seed) {
  gen::Rng rng(seed);
  std::size_t agree = 0, witnesses_ok = 0, sat = 0, roundtrip = 0;
  const std::size_t total = 1200;
  for (std::size_t i = 0; i < total; ++i) {
    const auto vars = static_cast<prop::Var>(1 + rng() % 12);
    const auto count = 1 + rng() % 6;
    std::vector<prop::PropFormula> fs;
    for (std::size_t j = 0; j < count; ++j) fs.push_back(gen::random_prop(rng, vars, 1 + rng() % 5));
    const auto cnf = prop::to_cnf(fs);
    const auto r = prop::dpll_solve(cnf);
    const auto tt = prop::truth_table_solve(fs);
    if (r.sat == tt.sat) ++agree;
    if (r.sat) {
      ++sat;
      bool all = true;
      for (const auto& f : fs) all = all && prop::evaluate(f, r.assignment);
      if (all) ++witnesses_ok;
    }
    const auto back = read_dimacs(emit_dimacs(cnf));
    std::multiset<std::multiset<prop::Literal>> a, b;
    for (const auto& c : cnf.clauses) a.emplace(c.begin(), c.end());
    for (const auto& c : back.clauses) b.emplace(c.begin(), c.end());
    if (a == b && back.num_vars == cnf.num_vars) ++roundtrip;
  }
  std::ostringstream d;
  d << agree << "/" << total << " agree with truth table, " << witnesses_ok << "/" << sat
    << " witnesses evaluate to T, " << roundtrip << "/" << total << " DIMACS round trips exact";
  report(agree == total && witnesses_ok == sat && roundtrip == total, "dpll-vs-truth-table", d.str());
}

void padding(std::uint64_t seed) {
  bool lengths = true;
  for (std::size_t n = 1; n <= 10; ++n) {
    lengths = lengths && pad(std::string(n, 'x'), 1).serialize().size() == (std::size_t{1} << n);
  }
  report(lengths, "padding-length", "n = 1..10, k = 1 gives 2^n bytes");

  gen::Rng rng(seed);
  bool inverse = true;
  for (int i = 0; i < 200; ++i) {
    std::string payload(rng() % 16, ' ');
    for (auto& ch : payload) {
      do ch = static_cast<char>(32 + rng() % 95);
      while (ch == kPseudoBlank);
    }
    const unsigned k = 1 + static_cast<unsigned>(rng() % 2);
    if (!padded_length(payload.size(), k) || *padded_length(payload.size(), k) > kDefaultMaxPaddedBytes) continue;
    inverse = inverse && unpad(pad(payload, k).serialize(), k) == payload;
  }
  report(inverse, "unpad-inverts-pad", "200 random payloads");

  std::size_t same = 0, tried = 0;
  const std::uint64_t max_bytes = std::uint64_t{1} << 24;
  while (tried < 50) {
    gen::InstanceShape shape{1 + rng() % 2, 0, 1 + rng() % 2, {{"P", 1}, {"R", 2}}, 2};
    const auto text = compact(pretty_print(to_formula(gen::random_segment(shape, rng))));
    if (text.size() > 24) continue;
    ++tried;
    PipelineOptions plain;
    PipelineOptions padded;
    padded.padded = true;
    padded.max_bytes = max_bytes;
    const auto a = run_pipeline(text, plain);
    const auto b = run_pipeline(pad(text, 1, max_bytes).serialize(), padded);
    if (a.sat == b.sat) ++same;
  }
  std::ostringstream d;
  d << same << "/" << tried << " instances give the same verdict padded and unpadded";
  report(same == tried, "padded-verdicts", d.str());

  std::size_t cases = 0, exact = 0;
  for (unsigned k = 1; k <= 3; ++k) {
    for (std::uint64_t n = 0; n <= 30; ++n) {
      for (std::uint64_t max : {std::uint64_t{1}, std::uint64_t{64}, std::uint64_t{1} << 16, kDefaultMaxPaddedBytes,
                                std::uint64_t{1} << 30}) {
        ++cases;
        const auto len = padded_length(n, k);
        const bool expect = !len || *len > max;
        bool threw = false;
        try {
          pad(std::string(n, 'x'), k, max);
        } catch (const Error& e) {
          threw = e.kind() == ErrorKind::PaddingOverflow;
        }
        if (threw == expect) ++exact;
      }
    }
  }
  std::ostringstream o;
  o << exact << "/" << cases << " (n, k, max_bytes) cases overflow exactly when 2^(n^k) > max_bytes";
  report(exact == cases, "padding-overflow", o.str());
}

void documentation(const std::string& readme_path) {
  std::ifstream in(readme_path);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto text = ss.str();
  const bool ok = in.good() || !text.empty();
  const bool says = text.find("not verified") != std::string::npos &&
                    text.find("not reproducible") != std::string::npos &&
                    text.find("complexity") != std::string::npos;
  report(ok && says, "docs-state-unverified-claims",
         ok ? readme_path + (says ? " states the limits" : " lacks the statement") : "cannot read " + readme_path);
}

}  // namespace

int main(int argc, char** argv) {
  std::string readme = BSAT_SOURCE_DIR "/README.md";
  std::uint64_t seed = 20240601;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (std::strcmp(argv[i], "--readme") == 0) readme = argv[i + 1];
    else if (std::strcmp(argv[i], "--seed") == 0) seed = std::stoull(argv[i + 1]);
  }

  try {
    std::vector<CorpusEntry> corpus;
    sbs_against_oracle(seed, corpus);
    ground_set_sizes(seed + 1);
    bs_skolem_against_oracle(seed + 2);
    small_models(corpus);
    witness_policies();
    propositional(seed + 3);
    padding(seed + 4);
    documentation(readme);
  } catch (const std::exception& e) {
    std::cout << "FAIL aborted: " << e.what() << std::endl;
    return 1;
  }
  std::cout << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
