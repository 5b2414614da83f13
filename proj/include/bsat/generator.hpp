#pragma once

// Seeded random instances for benches and property tests.

#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bsat/fragment.hpp"
#include "bsat/prop.hpp"

namespace bsat::gen {

using Rng = std::mt19937_64;

struct InstanceShape {
  std::size_t m = 1;  // distinct constants in the matrix (a, b, c, ...)
  std::size_t s = 0;  // existential variables
  std::size_t t = 1;  // universal variables
  std::vector<std::pair<std::string, std::size_t>> relations{{"P", 1}, {"R", 2}};
  std::size_t max_depth = 4;
};

/// Constant names used for m constants: a, b, ..., then c26, c27, ...
std::vector<std::string> constant_names(std::size_t m);

/// Random matrix tree over {~, |, &, ->} with atoms at the leaves; resampled
/// until every quantified variable and exactly m constants occur. The
/// result always classifies as BS (s > 0) or SBS (s == 0).
/// Throws std::runtime_error if no valid matrix turns up.
BSExpression random_bs(const InstanceShape& shape, Rng& rng);
SBSegment random_segment(InstanceShape shape, Rng& rng);

/// Parse a relation signature such as "P/1,R/2".
std::vector<std::pair<std::string, std::size_t>> parse_signature(const std::string& text);

/// Random {~, |} formula (conjunctions appear in desugared form).
prop::PropFormula random_prop(Rng& rng, prop::Var max_var, std::size_t max_depth);

}  // namespace bsat::gen
