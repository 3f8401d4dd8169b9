#include "readout/sweep/runner.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ostream>

#include "readout/approx.hpp"
#include "readout/classify.hpp"
#include "readout/encodings.hpp"
#include "readout/error.hpp"
#include "readout/info.hpp"

namespace readout::sweep {

using json = nlohmann::ordered_json;

namespace {

bool has_threshold(Scheme s) { return s == Scheme::heating || s == Scheme::multilevel; }

FockReadout fock_params(Scheme scheme, const GridPoint& p) {
  return {.levels = p.levels,
          .threshold = p.threshold.value_or(0),
          .readouts = p.readouts,
          .delta = p.delta,
          .kd_tau = p.kd_tau,
          .ku_tau = p.ku_tau.value_or(0.0),
          .ancilla = scheme == Scheme::multilevel ? Ancilla::multilevel : Ancilla::two_level};
}

ApproxInputs approx_inputs(const GridPoint& p) {
  return {p.levels, p.threshold.value_or(0), p.readouts, p.delta, p.kd_tau, p.ku_tau.value_or(0.0)};
}

void take_report(ResultRow& row, const InfidelityReport& r) {
  row.p0_given_L = r.p0_given_L;
  row.pL_given_0 = r.pL_given_0;
  row.infidelity = r.infidelity();
  row.stderr_total = r.stderr_total;
}

void take_approx(ResultRow& row, const ApproxResult& r) {
  row.p0_given_L = r.p0_given_L;
  row.pL_given_0 = r.pL_given_0;
  row.infidelity = r.infidelity;
  row.valid_flags = r.flags.to_string();
}

ApproxResult approximate(Scheme scheme, const GridPoint& p, bool full) {
  const auto in = approx_inputs(p);
  switch (scheme) {
    case Scheme::decay: return full ? approx_decay_full(in) : approx_decay_leading(in);
    case Scheme::heating: return full ? approx_heating_full(in) : approx_heating_leading(in);
    case Scheme::multilevel: return approx_multilevel_leading(in);
    case Scheme::cat: return approx_fidelity_cat(p.levels, p.readouts, p.delta, p.kd_tau, *p.alpha);
    case Scheme::binomial: return approx_fidelity_binomial(p.levels, *p.degree, p.readouts, p.delta, p.kd_tau);
  }
  throw ParameterError("unknown scheme");
}

void require_finite(const ResultRow& row) {
  for (const auto& v : {row.p0_given_L, row.pL_given_0, row.infidelity, row.stderr_total})
    if (v && !std::isfinite(*v))
      throw NumericError("non-finite result for strategy " + std::string(strategy_kind_name(row.strategy)) +
                         " at L=" + std::to_string(row.point.levels) + " N=" + std::to_string(row.point.readouts));
}

std::vector<ResultRow> evaluate_point(const SweepConfig& c, const GridPoint& p) {
  std::optional<HmmModel> model;
  const auto get_model = [&]() -> const HmmModel& {
    if (!model) model.emplace(build_model(fock_params(c.scheme, p)));
    return *model;
  };
  const EnumerationOptions enum_opts{.max_sequences = c.max_sequences, .threads = 1};
  const MonteCarloOptions mc_opts{.trials = c.mc_trials, .seed = c.seed, .threads = 1};
  const int m = p.threshold.value_or(0);

  std::vector<ResultRow> rows;
  for (StrategyKind s : c.strategies) {
    ResultRow row;
    row.scheme = c.scheme;
    row.strategy = s;
    row.point = p;
    const auto start = std::chrono::steady_clock::now();
    try {
      switch (s) {
        case StrategyKind::majority: take_report(row, exact_infidelity(get_model(), Majority{m}, enum_opts)); break;
        case StrategyKind::mle: take_report(row, exact_infidelity(get_model(), MaximumLikelihood{}, enum_opts)); break;
        case StrategyKind::mc:
          take_report(row, monte_carlo_infidelity(get_model(), Majority{m}, mc_opts));
          break;
        case StrategyKind::mc_mle:
          take_report(row, monte_carlo_infidelity(get_model(), MaximumLikelihood{}, mc_opts));
          break;
        case StrategyKind::fano: row.infidelity = fano_infidelity_bound(get_model(), enum_opts).infidelity; break;
        case StrategyKind::approx: take_approx(row, approximate(c.scheme, p, false)); break;
        case StrategyKind::approx_full: take_approx(row, approximate(c.scheme, p, true)); break;
      }
    } catch (const BudgetError&) {
      row.p0_given_L = row.pL_given_0 = row.infidelity = row.stderr_total = std::nullopt;
      row.valid_flags = "error:budget";
      row.budget_error = true;
    }
    if (c.timing)
      row.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    require_finite(row);
    rows.push_back(std::move(row));
  }
  return rows;
}

void put_int(std::ostream& out, const std::optional<int>& v) {
  if (v) out << *v;
}

void put_real(std::ostream& out, const std::optional<double>& v) {
  if (v) out << format_real(*v);
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
json opt_json(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::vector<GridPoint> expand_grid(const SweepConfig& c) {
  const auto& g = c.grid;
  const bool thr = has_threshold(c.scheme);
  const std::vector<std::optional<int>> ms = [&] {
    std::vector<std::optional<int>> v;
    if (thr)
      for (int m : g.thresholds) v.emplace_back(m);
    else
      v.emplace_back();
    return v;
  }();
  const auto optional_axis = [](bool used, const auto& values) {
    using T = typename std::decay_t<decltype(values)>::value_type;
    std::vector<std::optional<T>> v;
    if (used)
      for (const T& x : values) v.emplace_back(x);
    else
      v.emplace_back();
    return v;
  };
  const auto kus = optional_axis(thr, g.ku_tau);
  const auto alphas = optional_axis(c.scheme == Scheme::cat, g.alpha);
  const auto degrees = optional_axis(c.scheme == Scheme::binomial, g.degree);

  std::vector<GridPoint> points;
  for (int L : g.levels)
    for (const auto& m : ms) {
      if (m && *m >= L) continue;
      for (int n : g.readouts)
        for (double d : g.delta)
          for (double kd : g.kd_tau)
            for (const auto& ku : kus)
              for (const auto& a : alphas)
                for (const auto& deg : degrees) points.push_back({L, m, n, d, kd, ku, a, deg});
    }
  return points;
}

std::vector<ResultRow> run_sweep(const SweepConfig& c) {
  const auto points = expand_grid(c);
  std::vector<std::vector<ResultRow>> per_point(points.size());
  parallel_for(points.size(), resolve_threads(c.threads),
               [&](std::size_t i) { per_point[i] = evaluate_point(c, points[i]); });
  std::vector<ResultRow> rows;
  rows.reserve(points.size() * c.strategies.size());
  for (auto& block : per_point)
    for (auto& r : block) rows.push_back(std::move(r));
  return rows;
}

std::string format_real(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    const auto& p = r.point;
    out << scheme_name(r.scheme) << ',' << strategy_kind_name(r.strategy) << ',' << p.levels << ',';
    put_int(out, p.threshold);
    out << ',' << p.readouts << ',' << format_real(p.delta) << ',' << format_real(p.kd_tau) << ',';
    put_real(out, p.ku_tau);
    out << ',';
    put_real(out, p.alpha);
    out << ',';
    put_int(out, p.degree);
    out << ',';
    put_real(out, r.p0_given_L);
    out << ',';
    put_real(out, r.pL_given_0);
    out << ',';
    put_real(out, r.infidelity);
    out << ',';
    put_real(out, r.stderr_total);
    out << ',' << r.valid_flags << ',';
    put_real(out, r.elapsed_ms);
    out << '\n';
  }
}

void write_json(const SweepConfig& config, const std::vector<ResultRow>& rows, std::ostream& out) {
  json list = json::array();
  for (const auto& r : rows) {
    const auto& p = r.point;
    list.push_back({{"scheme", std::string(scheme_name(r.scheme))},
                    {"strategy", std::string(strategy_kind_name(r.strategy))},
                    {"L", p.levels},
                    {"m", opt_json(p.threshold)},
                    {"N", p.readouts},
                    {"delta", p.delta},
                    {"kd_tau", p.kd_tau},
                    {"ku_tau", opt_json(p.ku_tau)},
                    {"alpha", opt_json(p.alpha)},
                    {"M", opt_json(p.degree)},
                    {"p0_given_L", opt_json(r.p0_given_L)},
                    {"pL_given_0", opt_json(r.pL_given_0)},
                    {"infidelity", opt_json(r.infidelity)},
                    {"stderr", opt_json(r.stderr_total)},
                    {"valid_flags", r.valid_flags},
                    {"elapsed_ms", opt_json(r.elapsed_ms)}});
  }
  out << json{{"config", json::parse(to_json(config).dump())}, {"rows", list}}.dump(2) << '\n';
}

void write_rows(const SweepConfig& config, const std::vector<ResultRow>& rows, std::ostream& out) {
  if (config.format == OutputFormat::csv)
    write_csv(rows, out);
  else
    write_json(config, rows, out);
}

}  // namespace readout::sweep
