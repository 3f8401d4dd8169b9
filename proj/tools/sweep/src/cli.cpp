#include "readout/sweep/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "readout/error.hpp"
#include "readout/sweep/config.hpp"
#include "readout/sweep/runner.hpp"

namespace readout::sweep {

using nlohmann::json;

namespace {

struct CliError {
  int code;
  std::string message;
};

struct Overrides {
  std::optional<std::string> scheme, strategies, output, format;
  std::optional<std::string> L, m, N, delta, kd_tau, ku_tau, alpha, M;
  std::optional<std::uint64_t> seed, mc_trials, budget;
  std::optional<unsigned> threads;
  bool timing = false;
};

void add_overrides(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--output", o.output, "Write the table to this path instead of standard output");
  cmd.add_option("--format", o.format, "csv or json");
  cmd.add_option("--seed", o.seed, "Monte Carlo seed");
  cmd.add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  cmd.add_option("--budget-override", o.budget, "Raise the exact-enumeration sequence budget");
  cmd.add_option("--scheme", o.scheme, "decay, heating, multilevel, cat or binomial");
  cmd.add_option("--strategies", o.strategies, "Comma-separated strategy list");
  cmd.add_option("--mc_trials", o.mc_trials, "Monte Carlo trials per row");
  cmd.add_flag("--timing", o.timing, "Fill the elapsed_ms column");
  cmd.add_option("--L", o.L, "Levels, e.g. 1,2 or 1..3");
  cmd.add_option("--m", o.m, "Thresholds");
  cmd.add_option("--N", o.N, "Readout counts, e.g. 1..15");
  cmd.add_option("--delta", o.delta, "Readout error probabilities");
  cmd.add_option("--kd_tau", o.kd_tau, "Decay rate times readout time");
  cmd.add_option("--ku_tau", o.ku_tau, "Heating rate times readout time");
  cmd.add_option("--alpha", o.alpha, "Cat amplitudes");
  cmd.add_option("--M", o.M, "Binomial code degrees");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, sep);) parts.push_back(item);
  return parts;
}

// "1,2,5" or "1..15" or a mix of both.
json parse_list(const std::string& key, const std::string& text) {
  json out = json::array();
  for (const auto& token : split(text, ',')) {
    const auto dots = token.find("..");
    try {
      if (dots != std::string::npos) {
        const int lo = std::stoi(token.substr(0, dots));
        const int hi = std::stoi(token.substr(dots + 2));
        if (hi < lo || hi - lo > 100000) throw std::invalid_argument("range");
        for (int v = lo; v <= hi; ++v) out.push_back(v);
      } else {
        const json v = json::parse(token);
        if (!v.is_number()) throw std::invalid_argument("number");
        out.push_back(v);
      }
    } catch (const std::exception&) {
      throw CliError{kExitConfig, "--" + key + ": cannot parse '" + token + "'"};
    }
  }
  return out;
}

json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{kExitConfig, "cannot open config file '" + path + "'"};
  try {
    return json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw CliError{kExitConfig, "config file '" + path + "' is not valid JSON: " + e.what()};
  }
}

void apply(json& doc, const Overrides& o) {
  if (!doc.is_object()) return;
  if (o.scheme) doc["scheme"] = *o.scheme;
  if (o.strategies) doc["strategies"] = split(*o.strategies, ',');
  if (o.output) doc["output"] = *o.output;
  if (o.format) doc["format"] = *o.format;
  if (o.seed) doc["seed"] = *o.seed;
  if (o.threads) doc["threads"] = *o.threads;
  if (o.mc_trials) doc["mc_trials"] = *o.mc_trials;
  if (o.timing) doc["timing"] = true;
  const std::pair<const char*, const std::optional<std::string>*> grid[] = {
      {"L", &o.L},           {"m", &o.m},           {"N", &o.N},         {"delta", &o.delta},
      {"kd_tau", &o.kd_tau}, {"ku_tau", &o.ku_tau}, {"alpha", &o.alpha}, {"M", &o.M}};
  for (const auto& [key, value] : grid)
    if (*value) doc["grid"][key] = parse_list(key, **value);
}

SweepConfig load(json doc, const Overrides& o, std::ostream& err) {
  apply(doc, o);
  std::uint64_t budget = kDefaultSequenceBudget;
  if (o.budget) {
    budget = *o.budget;
    err << "budget override: enumeration limited to " << budget << " sequences (default " << kDefaultSequenceBudget
        << ")\n";
  }
  auto result = validate_config(doc, budget);
  if (!result.ok()) {
    for (const auto& issue : result.issues)
      err << (issue.kind == ConfigIssue::Kind::budget ? "budget error: " : "config error: ") << issue.message << '\n';
    throw CliError{result.budget_only() ? kExitBudget : kExitConfig, ""};
  }
  return *result.config;
}

void emit(const SweepConfig& c, const std::vector<ResultRow>& rows, std::ostream& out) {
  if (c.output.empty()) {
    write_rows(c, rows, out);
    return;
  }
  std::ofstream file(c.output, std::ios::binary);
  if (!file) throw CliError{kExitConfig, "cannot write output file '" + c.output + "'"};
  write_rows(c, rows, file);
  if (!file.flush()) throw CliError{kExitConfig, "failed writing output file '" + c.output + "'"};
}

int finish(const std::vector<ResultRow>& rows, std::ostream& err) {
  const auto failed = std::ranges::count_if(rows, [](const ResultRow& r) { return r.budget_error; });
  if (failed == 0) return kExitOk;
  err << "budget error: " << failed << " row(s) exceeded the enumeration budget and are marked error:budget\n";
  return kExitBudget;
}

int mc_check(SweepConfig c, std::ostream& out, std::ostream& err) {
  const bool mle = std::ranges::find(c.strategies, StrategyKind::mle) != c.strategies.end();
  const bool majority = std::ranges::find(c.strategies, StrategyKind::majority) != c.strategies.end();
  c.strategies.clear();
  if (majority || !mle) c.strategies.insert(c.strategies.end(), {StrategyKind::majority, StrategyKind::mc});
  if (mle) c.strategies.insert(c.strategies.end(), {StrategyKind::mle, StrategyKind::mc_mle});
  const auto rows = run_sweep(c);
  emit(c, rows, out);

  double worst = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
    const auto& exact = rows[i];
    const auto& sampled = rows[i + 1];
    if (!exact.infidelity || !sampled.infidelity) continue;
    ++pairs;
    const double diff = std::abs(*sampled.infidelity - *exact.infidelity);
    const double se = sampled.stderr_total.value_or(0.0);
    worst = std::max(worst, se > 0.0 ? diff / se : (diff == 0.0 ? 0.0 : INFINITY));
  }
  err << "mc-check: " << pairs << " comparison(s), largest deviation " << format_real(worst)
      << " standard errors (limit 5)\n";
  const int budget = finish(rows, err);
  if (worst > 5.0) return kExitNumeric;
  return budget;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Readout fidelity sweeps for repeated ancilla measurements of a Fock-encoded qudit"};
  app.require_subcommand(1);

  Overrides o;
  std::string path, figure;
  auto* sweep = app.add_subcommand("sweep", "Run every strategy over a config grid");
  sweep->add_option("config", path, "Config file (JSON)")->required();
  auto* reproduce = app.add_subcommand("reproduce", "Run a built-in figure preset");
  reproduce->add_option("figure", figure, "fig3, fig5 or fig6")->required();
  auto* bound = app.add_subcommand("bound", "Information-theoretic lower bound over a config grid");
  bound->add_option("config", path, "Config file (JSON)")->required();
  auto* mc = app.add_subcommand("mc-check", "Compare Monte Carlo against exact enumeration");
  mc->add_option("config", path, "Config file (JSON)")->required();
  auto* validate = app.add_subcommand("validate", "Check a config and print it with defaults filled in");
  validate->add_option("config", path, "Config file (JSON)")->required();
  for (auto* cmd : {sweep, reproduce, bound, mc, validate}) add_overrides(*cmd, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (reproduce->parsed()) {
      auto doc = preset_document(figure);
      if (!doc) throw CliError{kExitConfig, "unknown figure '" + figure + "'; expected fig3, fig5 or fig6"};
      const auto c = load(*doc, o, err);
      const auto rows = run_sweep(c);
      emit(c, rows, out);
      return finish(rows, err);
    }
    auto doc = read_document(path);
    if (bound->parsed()) doc["strategies"] = {"fano"};
    const auto c = load(std::move(doc), o, err);
    if (validate->parsed()) {
      out << to_json(c).dump(2) << '\n';
      return kExitOk;
    }
    if (mc->parsed()) return mc_check(c, out, err);
    const auto rows = run_sweep(c);
    emit(c, rows, out);
    return finish(rows, err);
  } catch (const CliError& e) {
    if (!e.message.empty()) err << "error: " << e.message << '\n';
    return e.code;
  } catch (const BudgetError& e) {
    err << "budget error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const ParameterError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace readout::sweep
