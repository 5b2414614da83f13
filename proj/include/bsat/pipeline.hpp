#pragma once

// End-to-end decision run: (unpad) -> parse -> classify -> witnesses ->
// ground -> translate -> clause form -> DPLL, with an optional oracle
// cross-check and per-stage wall-clock timings.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bsat/fragment.hpp"
#include "bsat/grounder.hpp"
#include "bsat/oracle.hpp"
#include "bsat/padding.hpp"
#include "json.hpp"

namespace bsat {

struct PipelineOptions {
  WitnessPolicy policy = WitnessPolicy::Skolem;
  bool padded = false;  // input is a padded blob
  unsigned k = 1;
  std::uint64_t max_bytes = kDefaultMaxPaddedBytes;
  std::uint64_t instance_cap = kDefaultInstanceCap;
  std::uint64_t guard = oracle::kDefaultEnumerationGuard;
  bool oracle_check = false;
  bool keep_artifacts = false;  // fill ground_set / dimacs / padded_output
};

struct StageTimings {
  double unpad_ms = 0;
  double parse_ms = 0;
  double ground_ms = 0;
  double translate_ms = 0;
  double solve_ms = 0;
  double oracle_ms = 0;

  double total_ms() const { return unpad_ms + parse_ms + ground_ms + translate_ms + solve_ms; }
};

struct PipelineReport {
  FragmentClass input_class = FragmentClass::General;
  WitnessPolicy policy = WitnessPolicy::Skolem;
  std::size_t s = 0;
  std::size_t t = 0;
  std::size_t constants = 0;  // max(1, |con(matrix)|)
  std::size_t m = 0;          // size of the universe that was grounded over
  std::size_t n = 0;          // unpadded input length in bytes
  std::optional<std::uint64_t> padded_length;

  std::uint64_t ground_count = 0;    // instances per witness choice, m^t
  std::uint64_t witness_choices = 1;  // > 1 only for paper-literal on BS input
  std::size_t prop_var_count = 0;
  std::size_t clause_count = 0;

  bool sat = false;
  std::vector<std::string> witness_constants;          // images of x1..xs
  std::vector<std::pair<std::string, bool>> witness;  // ground atom -> value

  std::optional<bool> oracle_sat;
  std::optional<oracle::FiniteStructure> oracle_model;
  std::size_t oracle_bound = 0;

  StageTimings timings;

  std::string ground_set;
  std::string dimacs;
  std::string padded_output;

  bool agrees_with_oracle() const { return !oracle_sat || *oracle_sat == sat; }
  /// Total runtime per padded input byte, when the input was padded.
  std::optional<double> ms_per_padded_byte() const;
};

/// Run on raw file bytes. Errors carry the name of the failing stage.
PipelineReport run_pipeline(std::string_view file_bytes, const PipelineOptions& options);
PipelineReport run_pipeline_file(const std::filesystem::path& file, const PipelineOptions& options);

/// Read a whole file. Throws Io.
std::string read_file(const std::filesystem::path& file);

/// Strip comments, parse, and classify.
struct LoadedFormula {
  ParsedFormula parsed;
  Classification classification;
};
LoadedFormula load_formula(std::string_view file_text);

nlohmann::json to_json(const oracle::FiniteStructure& s);
nlohmann::json to_json(const PipelineReport& r);
nlohmann::json classification_json(const Classification& c);

}  // namespace bsat
