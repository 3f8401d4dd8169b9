#include "readout/sweep/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>

#include "readout/error.hpp"

namespace readout::sweep {

using nlohmann::json;

namespace {

constexpr std::array kSchemes{Scheme::decay, Scheme::heating, Scheme::multilevel, Scheme::cat, Scheme::binomial};
constexpr std::array kStrategies{StrategyKind::majority, StrategyKind::mle,  StrategyKind::approx,
                                 StrategyKind::approx_full, StrategyKind::fano, StrategyKind::mc,
                                 StrategyKind::mc_mle};

// Largest materialized channel for the information-theoretic bound.
constexpr std::uint64_t kFanoSequenceCap = std::uint64_t{1} << 20;

constexpr int kMaxLevels = 12;

const std::set<std::string> kTopKeys{"scheme", "grid",   "strategies", "mc_trials", "seed",
                                     "threads", "output", "format",     "timing"};
const std::set<std::string> kGridKeys{"L", "m", "N", "delta", "kd_tau", "ku_tau", "alpha", "M"};

class Collector {
 public:
  void config(std::string msg) { issues_.push_back({ConfigIssue::Kind::config, std::move(msg)}); }
  void budget(std::string msg) { issues_.push_back({ConfigIssue::Kind::budget, std::move(msg)}); }
  std::vector<ConfigIssue> take() { return std::move(issues_); }
  bool empty() const { return issues_.empty(); }

 private:
  std::vector<ConfigIssue> issues_;
};

std::string describe(const json& v) {
  std::string s = v.dump();
  if (s.size() > 40) s = s.substr(0, 37) + "...";
  return s;
}

// A scalar or an array of scalars, each accepted by `get`.
template <class T, class Get>
std::vector<T> read_list(const json& v, const std::string& key, Collector& errs, Get get) {
  std::vector<T> out;
  const auto one = [&](const json& item) {
    if (auto x = get(item))
      out.push_back(*x);
    else
      errs.config("grid." + key + ": expected " + (std::is_same_v<T, int> ? "integer" : "number") + ", got " +
                  describe(item));
  };
  if (v.is_array()) {
    if (v.empty()) errs.config("grid." + key + ": list is empty");
    for (const auto& item : v) one(item);
  } else {
    one(v);
  }
  return out;
}

std::optional<int> as_int(const json& v) {
  if (v.is_number_integer()) {
    const auto x = v.get<std::int64_t>();
    if (x >= std::numeric_limits<int>::min() && x <= std::numeric_limits<int>::max()) return static_cast<int>(x);
  }
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 1e9) return static_cast<int>(x);
  }
  return std::nullopt;
}

std::optional<double> as_real(const json& v) {
  if (!v.is_number()) return std::nullopt;
  return v.get<double>();
}

std::optional<std::uint64_t> as_u64(const json& v) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  return std::nullopt;
}

template <class E, std::size_t K, class Name>
std::optional<E> parse_enum(const json& v, const std::array<E, K>& all, Name name) {
  if (!v.is_string()) return std::nullopt;
  const auto s = v.get<std::string>();
  for (E e : all)
    if (name(e) == s) return e;
  return std::nullopt;
}

template <class T>
std::string join(const std::vector<T>& xs) {
  std::string s;
  for (const auto& x : xs) {
    if (!s.empty()) s += ", ";
    s += std::to_string(x);
  }
  return s;
}

bool uses_threshold(Scheme s) { return s == Scheme::heating || s == Scheme::multilevel; }
bool uses_heating(Scheme s) { return s == Scheme::heating || s == Scheme::multilevel; }

void check_grid(const SweepConfig& c, const std::set<std::string>& given, Collector& errs) {
  const auto& g = c.grid;
  for (int L : g.levels)
    if (L < 1 || L > kMaxLevels) errs.config("grid.L: " + std::to_string(L) + " outside [1, 12]");
  for (int m : g.thresholds)
    if (m < 0) errs.config("grid.m: " + std::to_string(m) + " is negative");
  for (int n : g.readouts)
    if (n < 1) errs.config("grid.N: " + std::to_string(n) + " must be >= 1");

  const bool multilevel = c.scheme == Scheme::multilevel;
  for (double d : g.delta) {
    if (!std::isfinite(d) || d < 0.0)
      errs.config("grid.delta: " + std::to_string(d) + " must be finite and >= 0");
    else if (!multilevel && d >= 0.5)
      errs.config("grid.delta: " + std::to_string(d) + " must be < 0.5 for a two-level ancilla");
    else if (multilevel && d >= 1.0)
      errs.config("grid.delta: " + std::to_string(d) + " must be < 1 for a multilevel ancilla");
  }
  const bool approximating = std::ranges::any_of(c.strategies, [](StrategyKind s) {
    return s == StrategyKind::approx || s == StrategyKind::approx_full;
  });
  for (const auto& [key, values] : {std::pair{"kd_tau", &g.kd_tau}, std::pair{"ku_tau", &g.ku_tau}}) {
    for (double x : *values) {
      if (!std::isfinite(x) || x < 0.0)
        errs.config(std::string("grid.") + key + ": " + std::to_string(x) + " must be finite and >= 0");
      else if (approximating && x >= 1.0)
        errs.config(std::string("grid.") + key + ": " + std::to_string(x) + " must be < 1 for approximations");
    }
  }

  if (!uses_threshold(c.scheme) && given.contains("m") && g.thresholds != std::vector<int>{0})
    errs.config("grid.m: threshold is only used by the heating and multilevel schemes");
  if (!uses_heating(c.scheme) && given.contains("ku_tau") && g.ku_tau != std::vector<double>{0.0})
    errs.config("grid.ku_tau: heating is only modelled by the heating and multilevel schemes");

  if (c.scheme == Scheme::cat) {
    if (g.alpha.empty()) errs.config("grid.alpha: required by scheme cat");
    for (double a : g.alpha)
      if (!std::isfinite(a) || a <= 0.0) errs.config("grid.alpha: " + std::to_string(a) + " must be > 0");
  } else if (given.contains("alpha")) {
    errs.config("grid.alpha: only used by scheme cat");
  }
  if (c.scheme == Scheme::binomial) {
    if (g.degree.empty()) errs.config("grid.M: required by scheme binomial");
    for (int m : g.degree)
      if (m < 1) errs.config("grid.M: " + std::to_string(m) + " must be >= 1");
  } else if (given.contains("M")) {
    errs.config("grid.M: only used by scheme binomial");
  }

  if (uses_threshold(c.scheme) && !g.levels.empty() && !g.thresholds.empty()) {
    const int top = *std::ranges::max_element(g.levels);
    if (std::ranges::none_of(g.thresholds, [top](int m) { return m >= 0 && m < top; }))
      errs.config("grid.m: no threshold satisfies m < L for L in [" + join(g.levels) + "]");
  }
}

void check_budget_projection(const SweepConfig& c, Collector& errs) {
  if (c.scheme == Scheme::cat || c.scheme == Scheme::binomial) return;
  const bool enumerating = std::ranges::any_of(c.strategies, is_enumerating);
  const bool fano = std::ranges::find(c.strategies, StrategyKind::fano) != c.strategies.end();
  if (!enumerating || c.grid.levels.empty() || c.grid.readouts.empty()) return;
  const int n = *std::ranges::max_element(c.grid.readouts);
  const int top = *std::ranges::max_element(c.grid.levels);
  if (top < 1 || top > kMaxLevels || n < 1) return;
  const std::size_t alphabet = c.scheme == Scheme::multilevel ? static_cast<std::size_t>(top) + 1 : 2;
  try {
    check_budget(alphabet, n, c.max_sequences);
  } catch (const BudgetError& e) {
    errs.budget(e.what());
  }
  if (fano && sequence_count(alphabet, n) > kFanoSequenceCap)
    errs.budget("fano bound materializes every record and requires alphabet^N <= 2^20, got " +
                std::to_string(alphabet) + "^" + std::to_string(n));
}

}  // namespace

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::decay: return "decay";
    case Scheme::heating: return "heating";
    case Scheme::multilevel: return "multilevel";
    case Scheme::cat: return "cat";
    case Scheme::binomial: return "binomial";
  }
  return "?";
}

std::string_view strategy_kind_name(StrategyKind s) {
  switch (s) {
    case StrategyKind::majority: return "majority";
    case StrategyKind::mle: return "mle";
    case StrategyKind::approx: return "approx";
    case StrategyKind::approx_full: return "approx-full";
    case StrategyKind::fano: return "fano";
    case StrategyKind::mc: return "mc";
    case StrategyKind::mc_mle: return "mc-mle";
  }
  return "?";
}

std::string_view format_name(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

bool is_enumerating(StrategyKind s) {
  return s == StrategyKind::majority || s == StrategyKind::mle || s == StrategyKind::fano;
}

bool is_supported(Scheme scheme, StrategyKind strategy) {
  switch (strategy) {
    case StrategyKind::approx: return true;
    case StrategyKind::approx_full: return scheme == Scheme::decay || scheme == Scheme::heating;
    default: return scheme != Scheme::cat && scheme != Scheme::binomial;
  }
}

bool ValidationResult::budget_only() const {
  return !issues.empty() &&
         std::ranges::all_of(issues, [](const ConfigIssue& i) { return i.kind == ConfigIssue::Kind::budget; });
}

ValidationResult validate_config(const json& raw, std::uint64_t max_sequences) {
  Collector errs;
  SweepConfig c;
  c.max_sequences = max_sequences;
  if (!raw.is_object()) {
    errs.config("config: expected an object at the top level");
    return {std::nullopt, errs.take()};
  }
  for (const auto& [key, _] : raw.items())
    if (!kTopKeys.contains(key)) errs.config("unknown key '" + key + "'");

  if (raw.contains("scheme")) {
    if (auto s = parse_enum(raw["scheme"], kSchemes, scheme_name))
      c.scheme = *s;
    else
      errs.config("scheme: expected one of decay, heating, multilevel, cat, binomial, got " + describe(raw["scheme"]));
  }

  std::set<std::string> given;
  if (raw.contains("grid")) {
    const auto& g = raw["grid"];
    if (!g.is_object()) {
      errs.config("grid: expected an object");
    } else {
      for (const auto& [key, value] : g.items()) {
        if (!kGridKeys.contains(key)) {
          errs.config("unknown key 'grid." + key + "'");
          continue;
        }
        given.insert(key);
        if (key == "L") c.grid.levels = read_list<int>(value, key, errs, as_int);
        if (key == "m") c.grid.thresholds = read_list<int>(value, key, errs, as_int);
        if (key == "N") c.grid.readouts = read_list<int>(value, key, errs, as_int);
        if (key == "M") c.grid.degree = read_list<int>(value, key, errs, as_int);
        if (key == "delta") c.grid.delta = read_list<double>(value, key, errs, as_real);
        if (key == "kd_tau") c.grid.kd_tau = read_list<double>(value, key, errs, as_real);
        if (key == "ku_tau") c.grid.ku_tau = read_list<double>(value, key, errs, as_real);
        if (key == "alpha") c.grid.alpha = read_list<double>(value, key, errs, as_real);
      }
    }
  }

  if (raw.contains("strategies")) {
    const auto& s = raw["strategies"];
    c.strategies.clear();
    const auto add = [&](const json& item) {
      if (auto k = parse_enum(item, kStrategies, strategy_kind_name)) {
        if (std::ranges::find(c.strategies, *k) != c.strategies.end())
          errs.config("strategies: duplicate " + describe(item));
        else
          c.strategies.push_back(*k);
      } else {
        errs.config("strategies: unknown strategy " + describe(item));
      }
    };
    if (s.is_array())
      for (const auto& item : s) add(item);
    else
      add(s);
    if (s.is_array() && s.empty()) errs.config("strategies: list is empty");
  }
  for (StrategyKind k : c.strategies)
    if (!is_supported(c.scheme, k))
      errs.config("strategies: " + std::string(strategy_kind_name(k)) + " is not available for scheme " +
                  std::string(scheme_name(c.scheme)));

  if (raw.contains("mc_trials")) {
    const auto v = as_u64(raw["mc_trials"]);
    if (!v || *v == 0)
      errs.config("mc_trials: expected a positive integer, got " + describe(raw["mc_trials"]));
    else
      c.mc_trials = *v;
  }
  if (raw.contains("seed")) {
    if (const auto v = as_u64(raw["seed"]))
      c.seed = *v;
    else
      errs.config("seed: expected a nonnegative integer, got " + describe(raw["seed"]));
  }
  if (raw.contains("threads")) {
    const auto v = as_u64(raw["threads"]);
    if (!v || *v > 1024)
      errs.config("threads: expected an integer in [0, 1024], got " + describe(raw["threads"]));
    else
      c.threads = static_cast<unsigned>(*v);
  }
  if (raw.contains("output")) {
    if (raw["output"].is_string())
      c.output = raw["output"].get<std::string>();
    else
      errs.config("output: expected a path string, got " + describe(raw["output"]));
  }
  if (raw.contains("format")) {
    const auto& f = raw["format"];
    if (f == "csv")
      c.format = OutputFormat::csv;
    else if (f == "json" || f == "structured-text")
      c.format = OutputFormat::json;
    else
      errs.config("format: expected csv or json, got " + describe(f));
  }
  if (raw.contains("timing")) {
    if (raw["timing"].is_boolean())
      c.timing = raw["timing"].get<bool>();
    else
      errs.config("timing: expected a boolean, got " + describe(raw["timing"]));
  }

  check_grid(c, given, errs);
  check_budget_projection(c, errs);
  if (!errs.empty()) return {std::nullopt, errs.take()};
  return {c, {}};
}

json to_json(const SweepConfig& c) {
  json grid{{"L", c.grid.levels}, {"m", c.grid.thresholds}, {"N", c.grid.readouts},
            {"delta", c.grid.delta}, {"kd_tau", c.grid.kd_tau}, {"ku_tau", c.grid.ku_tau}};
  if (c.scheme == Scheme::cat) grid["alpha"] = c.grid.alpha;
  if (c.scheme == Scheme::binomial) grid["M"] = c.grid.degree;
  json strategies = json::array();
  for (StrategyKind s : c.strategies) strategies.push_back(std::string(strategy_kind_name(s)));
  return json{{"scheme", std::string(scheme_name(c.scheme))},
              {"grid", grid},
              {"strategies", strategies},
              {"mc_trials", c.mc_trials},
              {"seed", c.seed},
              {"threads", c.threads},
              {"output", c.output},
              {"format", std::string(format_name(c.format))},
              {"timing", c.timing}};
}

namespace {

json readout_range(int first, int last) {
  json r = json::array();
  for (int n = first; n <= last; ++n) r.push_back(n);
  return r;
}

}  // namespace

std::optional<json> preset_document(std::string_view name) {
  if (name == "fig3")
    return json{{"scheme", "decay"},
                {"grid", {{"L", {1, 2}}, {"N", readout_range(1, 15)}, {"delta", {0.02}}, {"kd_tau", {0.01}}}},
                {"strategies", {"majority", "mle", "approx"}}};
  if (name == "fig5")
    return json{{"scheme", "heating"},
                {"grid",
                 {{"L", {1, 2, 3}},
                  {"m", {0, 1, 2}},
                  {"N", readout_range(1, 15)},
                  {"delta", {0.02}},
                  {"kd_tau", {0.01}},
                  {"ku_tau", {0.005}}}},
                {"strategies", {"majority", "mle", "approx"}}};
  if (name == "fig6")
    return json{{"scheme", "multilevel"},
                {"grid",
                 {{"L", {3}},
                  {"m", {0, 1, 2}},
                  {"N", readout_range(1, 10)},
                  {"delta", {0.02}},
                  {"kd_tau", {0.01}},
                  {"ku_tau", {0.005}}}},
                {"strategies", {"majority", "mle", "fano"}}};
  return std::nullopt;
}

std::vector<std::string> preset_names() { return {"fig3", "fig5", "fig6"}; }

}  // namespace readout::sweep
