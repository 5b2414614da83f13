// bsat: command-line front end.
//
// Exit codes
//   0  success / SAT / input in fragment
//   1  UNSAT, or `check` on a formula outside both fragments
//   2  usage, I/O, parse or other input errors
//   3  solver and oracle disagree (--oracle-check)
//   4  ExplosionGuard / EnumerationGuard / PaddingOverflow

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bsat/dimacs.hpp"
#include "bsat/error.hpp"
#include "bsat/generator.hpp"
#include "bsat/pipeline.hpp"
#include "bsat/text.hpp"

namespace fs = std::filesystem;
using namespace bsat;

namespace {

enum Exit : int {
  kOk = 0,
  kUnsat = 1,
  kInputError = 2,
  kDisagreement = 3,
  kGuard = 4,
};

struct RunConfig {
  std::string input;
  std::string policy = "skolem";
  bool witness = false;
  bool oracle_check = false;
  bool padded = false;
  unsigned k = 1;
  std::uint64_t max_bytes = kDefaultMaxPaddedBytes;
  std::uint64_t cap = kDefaultInstanceCap;
  std::uint64_t guard = oracle::kDefaultEnumerationGuard;
  std::size_t max_size = 0;
  bool json = false;
  std::string out;

  // bench
  std::size_t m = 2;
  std::size_t s = 0;
  std::string t_range = "1..4";
  std::uint64_t seed = 1;
  std::string relations = "P/1,R/2";
  std::size_t depth = 4;
  std::size_t count = 1;
  bool no_timings = false;
  std::string emit_dir;
};

WitnessPolicy policy_of(const RunConfig& cfg) {
  auto p = parse_policy(cfg.policy);
  if (!p) throw CLI::ValidationError("--policy", "expected skolem or paper-literal");
  return *p;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << bytes;
}

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::ExplosionGuard:
    case ErrorKind::EnumerationGuard:
    case ErrorKind::PaddingOverflow: return kGuard;
    default: return kInputError;
  }
}

int report_error(const std::string& input, const Error& e) {
  std::cerr << "error: ";
  if (!input.empty()) std::cerr << input << ": ";
  if (!e.stage().empty()) std::cerr << "[" << e.stage() << "] ";
  std::cerr << to_string(e.kind()) << ": " << e.what() << "\n";
  return exit_for(e);
}

int cmd_check(const RunConfig& cfg) {
  const auto loaded = load_formula(read_file(cfg.input));
  const auto& c = loaded.classification;
  if (cfg.json) {
    std::cout << classification_json(c).dump(2) << "\n";
  } else if (c.fragment == FragmentClass::General) {
    std::cout << "class=general violations=[";
    for (std::size_t i = 0; i < c.violations.size(); ++i) {
      std::cout << (i ? "," : "") << to_string(c.violations[i]);
    }
    std::cout << "]\n";
  } else {
    std::cout << "class=" << to_string(c.fragment);
    if (c.fragment == FragmentClass::BS) std::cout << " s=" << c.s();
    std::cout << " t=" << c.t() << " m=" << constant_count(c.bs->matrix) << "\n";
  }
  return c.fragment == FragmentClass::General ? kUnsat : kOk;
}

int cmd_ground(const RunConfig& cfg) {
  PipelineOptions opt;
  opt.policy = policy_of(cfg);
  opt.instance_cap = cfg.cap;
  opt.keep_artifacts = true;

  const auto loaded = load_formula(read_file(cfg.input));
  const auto& c = loaded.classification;
  if (c.fragment == FragmentClass::BS && opt.policy == WitnessPolicy::PaperLiteral) {
    throw Error(ErrorKind::NotInFragment,
                "paper-literal grounding of an existential prefix has one ground set per witness choice; "
                "use `solve --policy paper-literal`");
  }
  const auto report = run_pipeline_file(fs::path(cfg.input), opt);
  if (cfg.out.empty()) {
    std::cout << report.ground_set << report.dimacs;
  } else {
    write_file(cfg.out + ".ground", report.ground_set);
    write_file(cfg.out + ".cnf", report.dimacs);
    std::cout << "wrote " << cfg.out << ".ground (" << report.ground_count << " instances) and " << cfg.out
              << ".cnf (" << report.prop_var_count << " atoms, " << report.clause_count << " clauses)\n";
  }
  return kOk;
}

int cmd_solve(const RunConfig& cfg) {
  PipelineOptions opt;
  opt.policy = policy_of(cfg);
  opt.instance_cap = cfg.cap;
  opt.guard = cfg.guard;
  opt.oracle_check = cfg.oracle_check;
  const auto report = run_pipeline_file(fs::path(cfg.input), opt);

  if (cfg.json) {
    std::cout << to_json(report).dump(2) << "\n";
  } else {
    std::cout << (report.sat ? "SAT" : "UNSAT") << "\n";
    if (cfg.witness && report.sat) {
      for (std::size_t i = 0; i < report.witness_constants.size(); ++i) {
        std::cout << "  x" << (i + 1) << " := " << report.witness_constants[i] << "\n";
      }
      for (const auto& [atom, value] : report.witness) std::cout << "  " << atom << " = " << (value ? "T" : "F") << "\n";
    }
    if (report.oracle_sat) {
      std::cout << "oracle=" << (*report.oracle_sat ? "SAT" : "UNSAT") << " bound=" << report.oracle_bound
                << " agreement=" << (report.agrees_with_oracle() ? "yes" : "no") << "\n";
    }
  }
  if (!report.agrees_with_oracle()) {
    std::cerr << "warning: solver verdict disagrees with the finite-model oracle\n";
    return kDisagreement;
  }
  return report.sat ? kOk : kUnsat;
}

int cmd_oracle(const RunConfig& cfg) {
  const auto loaded = load_formula(read_file(cfg.input));
  const auto& c = loaded.classification;
  oracle::ModelSearch search;
  if (cfg.max_size > 0) {
    search = oracle::find_model(loaded.parsed.formula, cfg.max_size, cfg.guard);
  } else if (c.bs) {
    search = oracle::decide_by_bound(*c.bs, cfg.guard);
  } else {
    throw Error(ErrorKind::NotInFragment, "no model-size bound for a general formula; pass --max-size");
  }
  if (cfg.json) {
    nlohmann::json j;
    j["verdict"] = search.sat() ? "SAT" : "UNSAT";
    j["bound"] = search.max_size;
    j["nodes"] = search.nodes;
    if (search.model) j["model"] = to_json(*search.model);
    std::cout << j.dump(2) << "\n";
  } else if (search.sat()) {
    std::cout << "SAT\n" << to_json(*search.model).dump() << "\n";
  } else {
    std::cout << "UNSAT up to domain size " << search.max_size << "\n";
  }
  return search.sat() ? kOk : kUnsat;
}

int cmd_pad(const RunConfig& cfg) {
  const auto blob = pad(read_file(cfg.input), cfg.k, cfg.max_bytes);
  const auto out = cfg.out.empty() ? cfg.input + ".padded" : cfg.out;
  write_file(out, blob.serialize());
  std::cout << "wrote " << out << " (" << blob.total_length << " bytes, payload " << blob.payload.size() << ")\n";
  return kOk;
}

int cmd_unpad(const RunConfig& cfg) {
  const auto payload = unpad(read_file(cfg.input), cfg.k);
  if (cfg.out.empty()) {
    std::cout << payload;
  } else {
    write_file(cfg.out, payload);
  }
  return kOk;
}

int cmd_pipeline(const RunConfig& cfg) {
  PipelineOptions opt;
  opt.policy = policy_of(cfg);
  opt.padded = cfg.padded;
  opt.k = cfg.k;
  opt.max_bytes = cfg.max_bytes;
  opt.instance_cap = cfg.cap;
  opt.guard = cfg.guard;
  opt.oracle_check = cfg.oracle_check;
  opt.keep_artifacts = !cfg.out.empty();
  const auto report = run_pipeline_file(fs::path(cfg.input), opt);

  if (!cfg.out.empty()) {
    write_file(cfg.out, report.padded_length ? report.padded_output : report.ground_set);
  }
  if (cfg.json) {
    std::cout << to_json(report).dump(2) << "\n";
  } else {
    std::cout << "class=" << to_string(report.input_class) << " policy=" << to_string(report.policy)
              << " n=" << report.n;
    if (report.padded_length) std::cout << " padded_length=" << *report.padded_length;
    std::cout << " ground_count=" << report.ground_count << " verdict=" << (report.sat ? "SAT" : "UNSAT");
    if (report.oracle_sat) std::cout << " oracle=" << (*report.oracle_sat ? "SAT" : "UNSAT");
    std::cout << "\n";
  }
  if (!report.agrees_with_oracle()) return kDisagreement;
  return report.sat ? kOk : kUnsat;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto v = std::stoul(text);
    return {v, v};
  }
  return {std::stoul(text.substr(0, dots)), std::stoul(text.substr(dots + 2))};
}

int cmd_bench(const RunConfig& cfg) {
  const auto [t_lo, t_hi] = parse_range(cfg.t_range);
  gen::InstanceShape shape;
  shape.m = cfg.m;
  shape.s = cfg.s;
  shape.relations = gen::parse_signature(cfg.relations);
  shape.max_depth = cfg.depth;
  gen::Rng rng(cfg.seed);

  PipelineOptions opt;
  opt.instance_cap = cfg.cap;
  opt.guard = cfg.guard;
  opt.oracle_check = cfg.oracle_check;
  opt.policy = policy_of(cfg);

  if (!cfg.emit_dir.empty()) fs::create_directories(cfg.emit_dir);

  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream csv;
  csv << "m,s,t,instance,ground_count,prop_var_count,clause_count,verdict";
  if (cfg.oracle_check) csv << ",oracle";
  if (!cfg.no_timings) csv << ",ground_ms,translate_ms,solve_ms";
  csv << "\n";

  bool disagreement = false;
  for (std::size_t t = t_lo; t <= t_hi; ++t) {
    shape.t = t;
    for (std::size_t i = 0; i < cfg.count; ++i) {
      const auto bs = gen::random_bs(shape, rng);
      const auto text = pretty_print(to_formula(bs)) + "\n";
      if (!cfg.emit_dir.empty()) {
        write_file((fs::path(cfg.emit_dir) /
                    ("m" + std::to_string(cfg.m) + "_s" + std::to_string(cfg.s) + "_t" + std::to_string(t) + "_" +
                     std::to_string(i) + ".bs"))
                       .string(),
                   text);
      }
      const auto r = run_pipeline(std::string_view(text), opt);
      disagreement |= !r.agrees_with_oracle();

      nlohmann::json row;
      row["m"] = cfg.m;
      row["s"] = cfg.s;
      row["t"] = t;
      row["instance"] = i;
      row["formula"] = pretty_print(to_formula(bs));
      row["ground_count"] = r.ground_count;
      row["prop_var_count"] = r.prop_var_count;
      row["clause_count"] = r.clause_count;
      row["verdict"] = r.sat ? "SAT" : "UNSAT";
      if (r.oracle_sat) row["oracle"] = *r.oracle_sat ? "SAT" : "UNSAT";
      csv << cfg.m << "," << cfg.s << "," << t << "," << i << "," << r.ground_count << "," << r.prop_var_count << ","
          << r.clause_count << "," << (r.sat ? "SAT" : "UNSAT");
      if (r.oracle_sat) csv << "," << (*r.oracle_sat ? "SAT" : "UNSAT");
      if (!cfg.no_timings) {
        row["timings_ms"] = {{"ground", r.timings.ground_ms},
                             {"translate", r.timings.translate_ms},
                             {"solve", r.timings.solve_ms}};
        csv << "," << r.timings.ground_ms << "," << r.timings.translate_ms << "," << r.timings.solve_ms;
      }
      csv << "\n";
      rows.push_back(std::move(row));
    }
  }

  const std::string body = cfg.json ? rows.dump(2) + "\n" : csv.str();
  if (cfg.out.empty()) {
    std::cout << body;
  } else {
    write_file(cfg.out, body);
  }
  return disagreement ? kDisagreement : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Satisfiability for the Bernays-Schoenfinkel class via Herbrand grounding"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_input = [&](CLI::App* sub) { sub->add_option("file", cfg.input, "formula file")->required(); };
  auto add_policy = [&](CLI::App* sub) {
    sub->add_option("--policy", cfg.policy, "existential witnesses: skolem | paper-literal")
        ->check(CLI::IsMember({"skolem", "paper-literal"}));
  };
  auto add_cap = [&](CLI::App* sub) {
    sub->add_option("--cap", cfg.cap, "maximum number of ground instances");
  };
  auto add_guard = [&](CLI::App* sub) {
    sub->add_option("--guard", cfg.guard, "maximum model-search nodes for the oracle");
  };

  auto* check = app.add_subcommand("check", "classify a formula (SBS, BS or general)");
  add_input(check);
  check->add_flag("--json", cfg.json, "JSON output");

  auto* groundc = app.add_subcommand("ground", "write the ground-instance set and its DIMACS encoding");
  add_input(groundc);
  add_policy(groundc);
  add_cap(groundc);
  groundc->add_option("--out", cfg.out, "output prefix; writes PREFIX.ground and PREFIX.cnf");

  auto* solve = app.add_subcommand("solve", "decide satisfiability by grounding and DPLL");
  add_input(solve);
  add_policy(solve);
  add_cap(solve);
  add_guard(solve);
  solve->add_flag("--witness", cfg.witness, "print the satisfying assignment over ground atoms");
  solve->add_flag("--oracle-check", cfg.oracle_check, "cross-check with the finite-model oracle");
  solve->add_flag("--json", cfg.json, "JSON report");

  auto* oraclec = app.add_subcommand("oracle", "brute-force finite model search");
  add_input(oraclec);
  add_guard(oraclec);
  oraclec->add_option("--max-size", cfg.max_size, "search up to this domain size instead of the model bound");
  oraclec->add_flag("--json", cfg.json, "JSON output");

  auto* padc = app.add_subcommand("pad", "pad a file to 2^(n^k) bytes with pseudo-blanks");
  add_input(padc);
  padc->add_option("--k", cfg.k, "padding exponent")->check(CLI::PositiveNumber);
  padc->add_option("--max-bytes", cfg.max_bytes, "refuse to produce more bytes than this");
  padc->add_option("--out", cfg.out, "output path (default FILE.padded)");

  auto* unpadc = app.add_subcommand("unpad", "verify and strip padding");
  add_input(unpadc);
  unpadc->add_option("--k", cfg.k, "padding exponent")->check(CLI::PositiveNumber);
  unpadc->add_option("--out", cfg.out, "output path (default stdout)");

  auto* pipe = app.add_subcommand("pipeline", "full reduction run with per-stage timings");
  add_input(pipe);
  add_policy(pipe);
  add_cap(pipe);
  add_guard(pipe);
  pipe->add_flag("--padded", cfg.padded, "input file is a padded blob");
  pipe->add_option("--k", cfg.k, "padding exponent of the input")->check(CLI::PositiveNumber);
  pipe->add_option("--max-bytes", cfg.max_bytes, "padding size limit");
  pipe->add_flag("--oracle-check", cfg.oracle_check, "cross-check with the finite-model oracle");
  pipe->add_flag("--json", cfg.json, "JSON report");
  pipe->add_option("--out", cfg.out, "write the ground set (padded when the input was)");

  auto* bench = app.add_subcommand("bench", "generate a seeded instance family and tabulate costs");
  bench->add_option("--m", cfg.m, "constants per instance");
  bench->add_option("--s", cfg.s, "existential variables per instance");
  bench->add_option("--t", cfg.t_range, "universal variables, N or LO..HI");
  bench->add_option("--seed", cfg.seed, "random seed");
  bench->add_option("--relations", cfg.relations, "relation signature, e.g. P/1,R/2");
  bench->add_option("--depth", cfg.depth, "maximum matrix depth");
  bench->add_option("--count", cfg.count, "instances per t");
  add_policy(bench);
  add_cap(bench);
  add_guard(bench);
  bench->add_flag("--oracle-check", cfg.oracle_check, "cross-check every instance with the oracle");
  bench->add_flag("--no-timings", cfg.no_timings, "omit timing columns (output is then seed-deterministic)");
  bench->add_option("--emit-dir", cfg.emit_dir, "also write each generated formula to this directory");
  bench->add_flag("--json", cfg.json, "JSON instead of CSV");
  bench->add_option("--out", cfg.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*check) return cmd_check(cfg);
    if (*groundc) return cmd_ground(cfg);
    if (*solve) return cmd_solve(cfg);
    if (*oraclec) return cmd_oracle(cfg);
    if (*padc) return cmd_pad(cfg);
    if (*unpadc) return cmd_unpad(cfg);
    if (*pipe) return cmd_pipeline(cfg);
    if (*bench) return cmd_bench(cfg);
  } catch (const Error& e) {
    return report_error(cfg.input, e);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
