#include "ikep/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "ikep/error.hpp"

namespace ikep {

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::kArbitrary: return "arbitrary";
    case Scenario::kD1: return "d1";
    case Scenario::kD1Credits: return "d1_c";
    case Scenario::kLexmin: return "lexmin";
    case Scenario::kLexminCredits: return "lexmin_c";
    case Scenario::kD1Bar: return "d1_bar";
    case Scenario::kLexminBar: return "lexmin_bar";
  }
  return "?";
}

std::optional<Scenario> parse_scenario(std::string_view s) {
  for (Scenario x : kAllScenarios) {
    if (to_string(x) == s) return x;
  }
  return std::nullopt;
}

bool uses_credits(Scenario s) {
  return s == Scenario::kD1Credits || s == Scenario::kLexminCredits || is_bar(s);
}
bool is_bar(Scenario s) { return s == Scenario::kD1Bar || s == Scenario::kLexminBar; }
bool uses_lexmin(Scenario s) {
  return s == Scenario::kLexmin || s == Scenario::kLexminCredits || s == Scenario::kLexminBar;
}

std::string_view to_string(SizeSetting s) { return s == SizeSetting::kEqual ? "equal" : "varying"; }

std::optional<SizeSetting> parse_size_setting(std::string_view s) {
  if (s == "equal") return SizeSetting::kEqual;
  if (s == "varying") return SizeSetting::kVarying;
  return std::nullopt;
}

void SimulationConfig::validate() const {
  std::vector<std::string> bad;
  if (n_values.empty()) bad.push_back("n: empty");
  for (int n : n_values) {
    if (n < 2 || n > 20) bad.push_back("n: " + std::to_string(n) + " outside [2, 20]");
    if (n > pool_size && instance_files.empty()) bad.push_back("n: " + std::to_string(n) + " exceeds pool_size");
  }
  if (settings.empty()) bad.push_back("settings: empty");
  if (pool_size < 1) bad.push_back("pool_size: must be positive");
  if (rounds < 1) bad.push_back("rounds: must be at least 1");
  if (!(round1_fraction > 0.0 && round1_fraction <= 1.0)) bad.push_back("round1_fraction: outside (0, 1]");
  if (max_wait_rounds < 1) bad.push_back("max_wait_rounds: must be at least 1");
  if (instances < 1) bad.push_back("instances: must be at least 1");
  if (concepts.empty()) bad.push_back("concepts: empty");
  if (scenarios.empty()) bad.push_back("scenarios: empty");
  auto probabilities = [&](std::string_view key, auto const& a, bool must_sum) {
    double sum = 0.0;
    for (double x : a) {
      if (!(x >= 0.0 && x <= 1.0)) bad.push_back(std::string(key) + ": entries must lie in [0, 1]");
      sum += x;
    }
    if (must_sum && std::abs(sum - 1.0) > 1e-6) bad.push_back(std::string(key) + ": must sum to 1");
  };
  probabilities("generator.blood_frequencies", generator.blood_frequencies, true);
  probabilities("generator.pra_frequencies", generator.pra_frequencies, true);
  probabilities("generator.crossmatch_failure", generator.crossmatch_failure, false);
  if (!instance_files.empty() && static_cast<int>(instance_files.size()) < instances) {
    bad.push_back("instance_files: fewer files than instances");
  }
  if (bad.empty()) return;
  std::string msg = "invalid config:";
  for (const auto& b : bad) msg += "\n  " + b;
  throw ValidationError(msg);
}

namespace {

using nlohmann::json;

const char* const kBloodKeys[] = {"O", "A", "B", "AB"};
const char* const kPraKeys[] = {"low", "medium", "high"};

template <std::size_t N>
void read_table(const json& j, std::string_view key, const char* const (&names)[N], std::array<double, N>& out,
                std::vector<std::string>& bad) {
  if (!j.is_object()) {
    bad.push_back(std::string(key) + ": expected an object");
    return;
  }
  for (const auto& [k, v] : j.items()) {
    std::size_t i = 0;
    while (i < N && k != names[i]) ++i;
    if (i == N) {
      bad.push_back(std::string(key) + "." + k + ": unknown key");
    } else if (!v.is_number()) {
      bad.push_back(std::string(key) + "." + k + ": expected a number");
    } else {
      out[i] = v.template get<double>();
    }
  }
}

template <std::size_t N>
nlohmann::ordered_json write_table(const char* const (&names)[N], const std::array<double, N>& a) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < N; ++i) j[names[i]] = a[i];
  return j;
}

}  // namespace

SimulationConfig config_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  SimulationConfig cfg;
  std::vector<std::string> bad;

  auto integer = [&](const json& v, const std::string& key, auto& out) {
    if (!v.is_number_integer()) {
      bad.push_back(key + ": expected an integer");
      return;
    }
    out = v.get<std::remove_reference_t<decltype(out)>>();
  };
  auto list = [&](const json& v, const std::string& key, auto&& each) {
    if (!v.is_array()) {
      bad.push_back(key + ": expected an array");
      return;
    }
    for (const auto& e : v) each(e);
  };
  auto names = [&](const json& v, const std::string& key, auto parse, auto& out) {
    out.clear();
    list(v, key, [&](const json& e) {
      if (!e.is_string()) {
        bad.push_back(key + ": expected strings");
        return;
      }
      const auto parsed = parse(e.template get<std::string>());
      if (!parsed) {
        bad.push_back(key + ": unknown value \"" + e.template get<std::string>() + "\"");
      } else {
        out.push_back(*parsed);
      }
    });
  };

  for (const auto& [key, v] : j.items()) {
    if (key == "n") {
      cfg.n_values.clear();
      list(v, key, [&](const json& e) {
        if (e.is_number_integer()) {
          cfg.n_values.push_back(e.get<int>());
        } else {
          bad.push_back("n: expected integers");
        }
      });
    } else if (key == "settings") {
      names(v, key, parse_size_setting, cfg.settings);
    } else if (key == "pool_size") {
      integer(v, key, cfg.pool_size);
    } else if (key == "rounds") {
      integer(v, key, cfg.rounds);
    } else if (key == "round1_fraction") {
      if (v.is_number()) {
        cfg.round1_fraction = v.get<double>();
      } else {
        bad.push_back(key + ": expected a number");
      }
    } else if (key == "max_wait_rounds") {
      integer(v, key, cfg.max_wait_rounds);
    } else if (key == "instances") {
      integer(v, key, cfg.instances);
    } else if (key == "seed") {
      if (v.is_number_unsigned()) {
        cfg.seed = v.get<std::uint64_t>();
      } else {
        bad.push_back(key + ": expected a non-negative integer");
      }
    } else if (key == "concepts") {
      names(v, key, parse_concept, cfg.concepts);
    } else if (key == "scenarios") {
      names(v, key, parse_scenario, cfg.scenarios);
    } else if (key == "instance_files") {
      cfg.instance_files.clear();
      list(v, key, [&](const json& e) {
        if (e.is_string()) {
          cfg.instance_files.push_back(e.get<std::string>());
        } else {
          bad.push_back("instance_files: expected strings");
        }
      });
    } else if (key == "stability") {
      if (v.is_boolean()) {
        cfg.stability = v.get<bool>();
      } else {
        bad.push_back(key + ": expected a boolean");
      }
    } else if (key == "generator") {
      if (!v.is_object()) {
        bad.push_back("generator: expected an object");
        continue;
      }
      for (const auto& [gk, gv] : v.items()) {
        if (gk == "blood_frequencies") {
          read_table(gv, "generator.blood_frequencies", kBloodKeys, cfg.generator.blood_frequencies, bad);
        } else if (gk == "pra_frequencies") {
          read_table(gv, "generator.pra_frequencies", kPraKeys, cfg.generator.pra_frequencies, bad);
        } else if (gk == "crossmatch_failure") {
          read_table(gv, "generator.crossmatch_failure", kPraKeys, cfg.generator.crossmatch_failure, bad);
        } else if (gk == "reject_compatible_pairs") {
          if (gv.is_boolean()) {
            cfg.generator.reject_compatible_pairs = gv.get<bool>();
          } else {
            bad.push_back("generator.reject_compatible_pairs: expected a boolean");
          }
        } else {
          bad.push_back("generator." + gk + ": unknown key");
        }
      }
    } else {
      bad.push_back(key + ": unknown key");
    }
  }
  try {
    cfg.validate();
  } catch (const ValidationError& e) {
    // Keep the value errors alongside the schema errors.
    std::string_view rest = e.what();
    rest.remove_prefix(std::min(rest.size(), std::string_view("invalid config:").size()));
    while (!rest.empty()) {
      rest.remove_prefix(std::min(rest.size(), std::size_t{3}));
      const std::size_t end = rest.find('\n');
      bad.emplace_back(rest.substr(0, end));
      rest = end == std::string_view::npos ? std::string_view{} : rest.substr(end);
    }
  }
  if (!bad.empty()) {
    std::string msg = "invalid config:";
    for (const auto& b : bad) msg += "\n  " + b;
    throw ValidationError(msg);
  }
  return cfg;
}

std::string config_to_json(const SimulationConfig& cfg) {
  nlohmann::ordered_json j;
  j["n"] = cfg.n_values;
  std::vector<std::string> settings;
  for (SizeSetting s : cfg.settings) settings.emplace_back(to_string(s));
  j["settings"] = settings;
  j["pool_size"] = cfg.pool_size;
  j["rounds"] = cfg.rounds;
  j["round1_fraction"] = cfg.round1_fraction;
  j["max_wait_rounds"] = cfg.max_wait_rounds;
  j["instances"] = cfg.instances;
  j["seed"] = cfg.seed;
  std::vector<std::string> concepts;
  for (Concept c : cfg.concepts) concepts.emplace_back(to_string(c));
  j["concepts"] = concepts;
  std::vector<std::string> scenarios;
  for (Scenario s : cfg.scenarios) scenarios.emplace_back(to_string(s));
  j["scenarios"] = scenarios;
  j["generator"] = {
      {"blood_frequencies", write_table(kBloodKeys, cfg.generator.blood_frequencies)},
      {"pra_frequencies", write_table(kPraKeys, cfg.generator.pra_frequencies)},
      {"crossmatch_failure", write_table(kPraKeys, cfg.generator.crossmatch_failure)},
      {"reject_compatible_pairs", cfg.generator.reject_compatible_pairs},
  };
  j["instance_files"] = cfg.instance_files;
  j["stability"] = cfg.stability;
  return j.dump(2);
}

SimulationConfig paper_config() {
  SimulationConfig cfg;
  cfg.n_values.clear();
  for (int n = 4; n <= 15; ++n) cfg.n_values.push_back(n);
  cfg.settings = {SizeSetting::kEqual, SizeSetting::kVarying};
  cfg.pool_size = 2000;
  cfg.instances = 100;
  return cfg;
}

}  // namespace ikep
