#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "readout/sweep/config.hpp"

namespace readout::sweep {

struct GridPoint {
  int levels = 1;
  std::optional<int> threshold;  // heating and multilevel only
  int readouts = 1;
  double delta = 0.0;
  double kd_tau = 0.0;
  std::optional<double> ku_tau;  // heating and multilevel only
  std::optional<double> alpha;   // cat only
  std::optional<int> degree;     // binomial only
};

struct ResultRow {
  Scheme scheme = Scheme::decay;
  StrategyKind strategy = StrategyKind::majority;
  GridPoint point;
  std::optional<double> p0_given_L;
  std::optional<double> pL_given_0;
  std::optional<double> infidelity;
  std::optional<double> stderr_total;
  std::string valid_flags;  // approximations, or "error:<reason>" on a row failure
  std::optional<double> elapsed_ms;
  bool budget_error = false;
};

/// Grid points in lexicographic order over (L, m, N, delta, kd_tau, ku_tau,
/// alpha, M), each axis in the order given. Points with m >= L are skipped.
std::vector<GridPoint> expand_grid(const SweepConfig& config);

/// One row per grid point per strategy, in grid order with strategies
/// innermost. Grid points run on a worker pool; rows that exceed the
/// enumeration budget carry an error marker. Throws NumericError on any
/// non-finite value.
std::vector<ResultRow> run_sweep(const SweepConfig& config);

inline constexpr const char* kCsvHeader =
    "scheme,strategy,L,m,N,delta,kd_tau,ku_tau,alpha,M,p0_given_L,pL_given_0,infidelity,stderr,valid_flags,"
    "elapsed_ms";

/// Fixed 17-significant-digit rendering, lossless for doubles.
std::string format_real(double x);

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);
void write_json(const SweepConfig& config, const std::vector<ResultRow>& rows, std::ostream& out);
void write_rows(const SweepConfig& config, const std::vector<ResultRow>& rows, std::ostream& out);

}  // namespace readout::sweep
