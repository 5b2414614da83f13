#pragma once

// Herbrand universes, existential witnesses, ground instances and the
// translation of ground instances into propositional formulas.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bsat/fragment.hpp"
#include "bsat/prop.hpp"
#include "bsat/syntax.hpp"

namespace bsat {

enum class WitnessPolicy {
  Skolem,        // one fresh constant per existential variable
  PaperLiteral,  // witnesses drawn from the formula's own constants
};

std::string_view to_string(WitnessPolicy p);
std::optional<WitnessPolicy> parse_policy(std::string_view name);

struct HerbrandUniverse {
  std::vector<std::string> constants;  // sorted source constants, or {a0}
  bool auto_added_a0 = false;
  std::vector<std::string> skolem_constants;

  /// Canonical enumeration order: source constants, then skolem constants.
  std::vector<std::string> elements() const;
  std::size_t size() const { return constants.size() + skolem_constants.size(); }
};

/// Name of the i-th (1-based) skolem constant.
std::string skolem_name(std::size_t i);

HerbrandUniverse herbrand_universe(const SBSegment& seg);
HerbrandUniverse herbrand_universe(const BSExpression& bs, WitnessPolicy policy);

/// Replace each existential variable by a fresh constant _sk1.._sks.
SBSegment skolemize(const BSExpression& bs);

/// Substitute a chosen witness tuple for the existential variables.
SBSegment instantiate_witnesses(const BSExpression& bs, const std::vector<std::string>& witnesses);

struct GroundInstance {
  std::vector<std::string> tuple;  // u1..ut
  Formula formula;
};

struct GroundInstanceSet {
  std::vector<GroundInstance> instances;
};

inline constexpr std::uint64_t kDefaultInstanceCap = 1'000'000;

/// |universe|^t, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> instance_count(std::size_t universe_size, std::size_t t);

/// Every t-tuple over the universe in lexicographic order, substituted into
/// the matrix. Throws ExplosionGuard when m^t exceeds `cap`.
GroundInstanceSet ground(const SBSegment& seg, const HerbrandUniverse& universe,
                         std::uint64_t cap = kDefaultInstanceCap);

/// Ground-set file: one pretty-printed instance per line.
std::string ground_set_text(const GroundInstanceSet& gis);

/// Injective map from ground atoms to propositional variables, assigned in
/// first-occurrence order.
class AtomTable {
 public:
  prop::Var intern(const Formula& atom);
  std::optional<prop::Var> find(const Formula& atom) const;
  const Formula& atom(prop::Var v) const { return backward_.at(v - 1); }
  std::size_t size() const { return backward_.size(); }

 private:
  std::map<std::string, prop::Var> forward_;  // keyed by printed atom
  std::vector<Formula> backward_;
};

struct Translation {
  std::vector<prop::PropFormula> formulas;
  AtomTable atoms;
};

/// Homomorphic translation with &, -> and <-> rewritten into {~, |}.
/// Throws NotQuantifierFree if an instance is not ground and equality-free.
Translation pi_translate(const GroundInstanceSet& gis);

/// Inverse of the translation for one formula, in {~, |} form.
Formula rho(const prop::PropFormula& f, const AtomTable& atoms);

}  // namespace bsat
