#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "readout/enumerate.hpp"

namespace readout::sweep {

enum class Scheme { decay, heating, multilevel, cat, binomial };

// mc samples majority voting, mc-mle samples the maximum-likelihood rule.
enum class StrategyKind { majority, mle, approx, approx_full, fano, mc, mc_mle };

enum class OutputFormat { csv, json };

std::string_view scheme_name(Scheme s);
std::string_view strategy_kind_name(StrategyKind s);
std::string_view format_name(OutputFormat f);

bool is_enumerating(StrategyKind s);
bool is_supported(Scheme scheme, StrategyKind strategy);

struct Grid {
  std::vector<int> levels{1};
  std::vector<int> thresholds{0};
  std::vector<int> readouts{1};
  std::vector<double> delta{0.0};
  std::vector<double> kd_tau{0.0};
  std::vector<double> ku_tau{0.0};
  std::vector<double> alpha;
  std::vector<int> degree;
};

struct SweepConfig {
  Scheme scheme = Scheme::decay;
  Grid grid;
  std::vector<StrategyKind> strategies{StrategyKind::majority};
  std::uint64_t mc_trials = 1'000'000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string output;  // empty: standard output
  OutputFormat format = OutputFormat::csv;
  bool timing = false;
  std::uint64_t max_sequences = kDefaultSequenceBudget;
};

struct ConfigIssue {
  enum class Kind { config, budget };
  Kind kind = Kind::config;
  std::string message;
};

struct ValidationResult {
  std::optional<SweepConfig> config;
  std::vector<ConfigIssue> issues;
  bool ok() const { return config.has_value(); }
  bool budget_only() const;
};

/// Parse and check a config document, reporting every violation. The
/// sequence budget is not a document key; pass the default or an override.
ValidationResult validate_config(const nlohmann::json& raw,
                                 std::uint64_t max_sequences = kDefaultSequenceBudget);

/// The fully populated document for a config, defaults included.
nlohmann::json to_json(const SweepConfig& config);

/// Built-in figure presets: "fig3", "fig5", "fig6".
std::optional<nlohmann::json> preset_document(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace readout::sweep
