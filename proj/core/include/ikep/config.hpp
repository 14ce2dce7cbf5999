#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ikep/solutions.hpp"

namespace ikep {

enum class Scenario { kArbitrary, kD1, kD1Credits, kLexmin, kLexminCredits, kD1Bar, kLexminBar };

inline constexpr Scenario kAllScenarios[] = {Scenario::kArbitrary,     Scenario::kD1,    Scenario::kD1Credits,
                                             Scenario::kLexmin,        Scenario::kLexminCredits,
                                             Scenario::kD1Bar,         Scenario::kLexminBar};

std::string_view to_string(Scenario s);
std::optional<Scenario> parse_scenario(std::string_view s);

/// Scenarios that carry credits between rounds.
bool uses_credits(Scenario s);
/// Scenarios whose target comes from the credit-adjusted game.
bool is_bar(Scenario s);
bool uses_lexmin(Scenario s);

enum class SizeSetting { kEqual, kVarying };

std::string_view to_string(SizeSetting s);
std::optional<SizeSetting> parse_size_setting(std::string_view s);

/// Donor-patient compatibility model. Order of blood types: O, A, B, AB;
/// PRA classes: low, medium, high.
struct GeneratorParams {
  std::array<double, 4> blood_frequencies{0.4814, 0.3373, 0.1428, 0.0385};
  std::array<double, 3> pra_frequencies{0.7019, 0.2, 0.0981};
  std::array<double, 3> crossmatch_failure{0.05, 0.45, 0.9};
  /// Redraw pairs whose donor can give to their own patient; such pairs
  /// would transplant directly and never enter the pool.
  bool reject_compatible_pairs = true;

  friend bool operator==(const GeneratorParams&, const GeneratorParams&) = default;
};

struct SimulationConfig {
  std::vector<int> n_values{4, 5, 6, 7, 8, 9, 10};
  std::vector<SizeSetting> settings{SizeSetting::kEqual};
  int pool_size = 400;
  int rounds = 24;
  double round1_fraction = 0.25;
  int max_wait_rounds = 4;
  int instances = 20;
  std::uint64_t seed = 1;
  std::vector<Concept> concepts{std::begin(kAllConcepts), std::end(kAllConcepts)};
  std::vector<Scenario> scenarios{std::begin(kAllScenarios), std::end(kAllScenarios)};
  GeneratorParams generator;
  /// Instance files to use instead of the generator; instance i reads
  /// entry i. Country counts come from the files.
  std::vector<std::string> instance_files;
  /// Compute min-excess stability of the accumulated game (2^n coalitions).
  bool stability = true;

  /// Throws ValidationError listing every violated constraint.
  void validate() const;

  friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

/// Parses a JSON config. Unknown keys, wrong types and out-of-range values
/// raise ValidationError naming the offending keys. Missing keys keep their
/// defaults.
SimulationConfig config_from_json(std::string_view text);
std::string config_to_json(const SimulationConfig& cfg);

/// The paper-scale configuration: pool 2000, n = 4..15, both settings,
/// 100 instances.
SimulationConfig paper_config();

}  // namespace ikep
