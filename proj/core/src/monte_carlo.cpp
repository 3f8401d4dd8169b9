#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "readout/classify.hpp"
#include "readout/error.hpp"
#include "readout/rng.hpp"

namespace readout {

namespace {

constexpr std::uint64_t kBlockTrials = 1u << 16;

// Cumulative row distributions; the last bucket is open-ended so that
// rounding in the partial sums can never leave a draw unassigned.
std::vector<std::vector<double>> cumulative_rows(const Matrix& m) {
  std::vector<std::vector<double>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double acc = 0.0;
    for (double v : m.row(i)) out[i].push_back(acc += v);
    std::size_t last = out[i].size() - 1;
    while (last > 0 && m(i, last) == 0.0) --last;
    for (std::size_t j = last; j < out[i].size(); ++j) out[i][j] = std::numeric_limits<double>::infinity();
  }
  return out;
}

std::size_t draw(const std::vector<double>& cumulative, double u) {
  std::size_t j = 0;
  while (u >= cumulative[j]) ++j;
  return j;
}

}  // namespace

InfidelityReport monte_carlo_infidelity(const HmmModel& model, const Strategy& strategy,
                                        const MonteCarloOptions& opts) {
  if (opts.trials < 1) throw ParameterError("Monte Carlo needs at least one trial");
  if (const auto* maj = std::get_if<Majority>(&strategy);
      maj && (maj->threshold < 0 || maj->threshold >= model.levels()))
    throw ParameterError("majority threshold m must satisfy 0 <= m < L");

  const auto t_cum = cumulative_rows(model.transitions().entries());
  const auto e_cum = cumulative_rows(model.emissions().entries());
  const auto n = static_cast<std::size_t>(model.readouts());
  const std::uint64_t blocks = (opts.trials + kBlockTrials - 1) / kBlockTrials;

  // errors[h * blocks + b]: misclassified trials of hypothesis h in block b.
  std::vector<std::uint64_t> errors(2 * blocks, 0);
  parallel_for(errors.size(), resolve_threads(opts.threads), [&](std::size_t job) {
    const auto h = static_cast<Hypothesis>(job / blocks);
    const std::uint64_t block = job % blocks;
    const std::uint64_t begin = block * kBlockTrials;
    const std::uint64_t end = std::min(opts.trials, begin + kBlockTrials);
    CounterRng rng(opts.seed, (static_cast<std::uint64_t>(h) << 40) | block);
    std::vector<Symbol> seq(n);
    std::uint64_t wrong = 0;
    for (std::uint64_t trial = begin; trial < end; ++trial) {
      auto level = static_cast<std::size_t>(model.initial_level(h));
      for (std::size_t k = 0; k < n; ++k) {
        level = draw(t_cum[level], rng.uniform());
        seq[k] = static_cast<Symbol>(draw(e_cum[level], rng.uniform()));
      }
      if (classify(model, strategy, seq).decided != h) ++wrong;
    }
    errors[job] = wrong;
  });

  std::uint64_t wrong_zero = 0, wrong_top = 0;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    wrong_zero += errors[b];
    wrong_top += errors[blocks + b];
  }
  const auto trials = static_cast<double>(opts.trials);
  InfidelityReport r;
  r.method = Method::monte_carlo;
  r.p0_given_L = static_cast<double>(wrong_top) / trials;
  r.pL_given_0 = static_cast<double>(wrong_zero) / trials;
  r.fidelity = 1.0 - r.p0_given_L - r.pL_given_0;
  const double se_top = std::sqrt(r.p0_given_L * (1.0 - r.p0_given_L) / trials);
  const double se_zero = std::sqrt(r.pL_given_0 * (1.0 - r.pL_given_0) / trials);
  r.stderr_0_given_L = se_top;
  r.stderr_L_given_0 = se_zero;
  r.stderr_total = std::sqrt(se_top * se_top + se_zero * se_zero);
  r.rng_algorithm = std::string(CounterRng::kAlgorithm);
  r.params = model.params();
  return r;
}

}  // namespace readout
