#include "bsat/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "bsat/dimacs.hpp"
#include "bsat/error.hpp"
#include "bsat/text.hpp"

namespace bsat {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <typename Fn>
auto staged(const char* stage, double& elapsed_ms, Fn&& fn) {
  const auto start = Clock::now();
  try {
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      elapsed_ms += ms_since(start);
    } else {
      auto result = fn();
      elapsed_ms += ms_since(start);
      return result;
    }
  } catch (Error& e) {
    if (e.stage().empty()) e.set_stage(stage);
    throw;
  }
}

std::string violation_list(const std::vector<Violation>& vs) {
  std::string out;
  for (const auto& v : vs) {
    if (!out.empty()) out += ",";
    out += to_string(v);
  }
  return out;
}

// All s-tuples over `elems`, last position fastest.
std::vector<std::vector<std::string>> witness_tuples(const std::vector<std::string>& elems, std::size_t s,
                                                     std::uint64_t cap) {
  const auto count = instance_count(elems.size(), s);
  if (!count || *count > cap) {
    throw Error(ErrorKind::ExplosionGuard, std::to_string(elems.size()) + "^" + std::to_string(s) +
                                               " witness choices exceed the cap of " + std::to_string(cap));
  }
  std::vector<std::vector<std::string>> out;
  std::vector<std::size_t> digits(s, 0);
  for (std::uint64_t i = 0; i < *count; ++i) {
    std::vector<std::string> tuple;
    for (auto d : digits) tuple.push_back(elems[d]);
    out.push_back(std::move(tuple));
    for (std::size_t j = s; j-- > 0;) {
      if (++digits[j] < elems.size()) break;
      digits[j] = 0;
    }
  }
  return out;
}

}  // namespace

std::optional<double> PipelineReport::ms_per_padded_byte() const {
  if (!padded_length || *padded_length == 0) return std::nullopt;
  return timings.total_ms() / static_cast<double>(*padded_length);
}

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadedFormula load_formula(std::string_view file_text) {
  auto parsed = parse(strip_comments(file_text));
  auto cls = classify(parsed.formula, parsed.symbols);
  return {std::move(parsed), std::move(cls)};
}

PipelineReport run_pipeline(std::string_view file_bytes, const PipelineOptions& options) {
  PipelineReport report;
  report.policy = options.policy;
  auto& tm = report.timings;

  const std::string text = staged("unpad", tm.unpad_ms, [&] {
    if (!options.padded) return std::string(file_bytes);
    report.padded_length = file_bytes.size();
    return unpad(file_bytes, options.k);
  });
  report.n = text.size();

  const auto loaded = staged("parse", tm.parse_ms, [&] {
    auto l = load_formula(text);
    if (l.classification.fragment == FragmentClass::General) {
      Error e(ErrorKind::NotInFragment,
              "input is not a Bernays-Schoenfinkel sentence: " + violation_list(l.classification.violations));
      e.set_stage("classify");
      throw e;
    }
    return l;
  });
  const auto& cls = loaded.classification;
  const BSExpression& bs = *cls.bs;
  report.input_class = cls.fragment;
  report.s = bs.exist_vars.size();
  report.t = bs.univ_vars.size();
  report.constants = constant_count(bs.matrix);

  const bool literal = options.policy == WitnessPolicy::PaperLiteral && report.s > 0;
  const auto universe = herbrand_universe(bs, literal ? WitnessPolicy::PaperLiteral : WitnessPolicy::Skolem);
  report.m = universe.size();

  std::vector<std::vector<std::string>> choices;
  if (literal) {
    choices = staged("ground", tm.ground_ms,
                     [&] { return witness_tuples(universe.elements(), report.s, options.instance_cap); });
  } else {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= report.s; ++i) names.push_back(skolem_name(i));
    choices.push_back(std::move(names));
  }

  report.witness_choices = 0;
  for (const auto& choice : choices) {
    ++report.witness_choices;
    const auto gis = staged("ground", tm.ground_ms, [&] {
      const auto seg = instantiate_witnesses(bs, choice);
      return ground(seg, universe, options.instance_cap);
    });
    report.ground_count = gis.instances.size();

    const auto [translation, cnf] = staged("translate", tm.translate_ms, [&] {
      auto tr = pi_translate(gis);
      auto c = prop::to_cnf(tr.formulas);
      return std::pair{std::move(tr), std::move(c)};
    });
    report.prop_var_count = translation.atoms.size();
    report.clause_count = cnf.clauses.size();

    const auto result = staged("solve", tm.solve_ms, [&] { return prop::dpll_solve(cnf); });

    if (options.keep_artifacts) {
      report.ground_set = ground_set_text(gis);
      report.dimacs = emit_dimacs(cnf, translation.atoms);
    }
    if (result.sat) {
      report.sat = true;
      report.witness_constants = choice;
      for (prop::Var v = 1; v <= translation.atoms.size(); ++v) {
        report.witness.emplace_back(pretty_print(translation.atoms.atom(v)), *result.assignment.get(v));
      }
      break;
    }
  }

  if (options.oracle_check) {
    const auto search = staged("oracle", tm.oracle_ms, [&] { return oracle::decide_by_bound(bs, options.guard); });
    report.oracle_sat = search.sat();
    report.oracle_model = search.model;
    report.oracle_bound = search.max_size;
  }

  if (options.keep_artifacts && report.padded_length) {
    report.padded_output = pad_to(report.ground_set, *report.padded_length);
  }
  return report;
}

PipelineReport run_pipeline_file(const std::filesystem::path& file, const PipelineOptions& options) {
  std::string bytes;
  try {
    bytes = read_file(file);
  } catch (Error& e) {
    e.set_stage("read");
    throw;
  }
  return run_pipeline(std::string_view(bytes), options);
}

nlohmann::json to_json(const oracle::FiniteStructure& s) {
  nlohmann::json j;
  j["domain_size"] = s.domain_size();
  j["constants"] = nlohmann::json::object();
  for (const auto& [name, e] : s.constants()) j["constants"][name] = e;
  j["relations"] = nlohmann::json::object();
  for (const auto& [name, arity] : s.relation_arities()) j["relations"][name] = s.tuples(name);
  return j;
}

nlohmann::json classification_json(const Classification& c) {
  nlohmann::json j;
  j["class"] = to_string(c.fragment);
  if (c.bs) {
    j["s"] = c.s();
    j["t"] = c.t();
    j["m"] = constant_count(c.bs->matrix);
  }
  j["violations"] = nlohmann::json::array();
  for (auto v : c.violations) j["violations"].push_back(to_string(v));
  return j;
}

nlohmann::json to_json(const PipelineReport& r) {
  nlohmann::json j;
  j["class"] = to_string(r.input_class);
  j["policy"] = to_string(r.policy);
  j["s"] = r.s;
  j["t"] = r.t;
  j["m"] = r.m;
  j["constants"] = r.constants;
  j["n"] = r.n;
  if (r.padded_length) j["padded_length"] = *r.padded_length;
  j["ground_count"] = r.ground_count;
  j["witness_choices"] = r.witness_choices;
  j["prop_var_count"] = r.prop_var_count;
  j["clause_count"] = r.clause_count;
  j["verdict"] = r.sat ? "SAT" : "UNSAT";
  if (r.sat) {
    nlohmann::json w;
    w["atoms"] = nlohmann::json::object();
    for (const auto& [atom, value] : r.witness) w["atoms"][atom] = value;
    if (!r.witness_constants.empty()) w["existential"] = r.witness_constants;
    j["witness"] = w;
  }
  if (r.oracle_sat) {
    nlohmann::json o;
    o["verdict"] = *r.oracle_sat ? "SAT" : "UNSAT";
    o["bound"] = r.oracle_bound;
    o["agreement"] = r.agrees_with_oracle();
    if (r.oracle_model) o["model"] = to_json(*r.oracle_model);
    j["oracle"] = o;
  }
  nlohmann::json tj;
  if (r.padded_length) tj["unpad"] = r.timings.unpad_ms;
  tj["parse"] = r.timings.parse_ms;
  tj["ground"] = r.timings.ground_ms;
  tj["translate"] = r.timings.translate_ms;
  tj["solve"] = r.timings.solve_ms;
  if (r.oracle_sat) tj["oracle"] = r.timings.oracle_ms;
  j["timings_ms"] = tj;
  if (auto per = r.ms_per_padded_byte()) j["ms_per_padded_byte"] = *per;
  return j;
}

}  // namespace bsat
