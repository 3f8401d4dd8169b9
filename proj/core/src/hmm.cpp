#include "readout/hmm.hpp"

#include <cfloat>
#include <cmath>
#include <limits>
#include <string>

#include "readout/error.hpp"

namespace readout {

namespace {

void require_stochastic_rows(const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double sum = 0.0;
    for (double v : m.row(i)) {
      if (!(v >= 0.0 && v <= 1.0)) throw ParameterError("emission entries must lie in [0, 1]");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw ParameterError("emission row " + std::to_string(i) + " does not sum to 1");
  }
}

}  // namespace

EmissionMatrix::EmissionMatrix(Matrix entries, double delta, std::optional<int> threshold)
    : entries_(std::move(entries)), delta_(delta), threshold_(threshold) {}

EmissionMatrix EmissionMatrix::from_entries(Matrix entries) {
  require_stochastic_rows(entries);
  return EmissionMatrix(std::move(entries), std::numeric_limits<double>::quiet_NaN(), std::nullopt);
}

double EmissionMatrix::min_positive() const {
  double best = 1.0;
  for (double v : entries_.data())
    if (v > 0.0 && v < best) best = v;
  return best;
}

EmissionMatrix emission_two_level(int levels, int threshold, double delta) {
  if (levels < 1) throw ParameterError("level count L must be >= 1");
  if (threshold < 0 || threshold >= levels)
    throw ParameterError("threshold m must satisfy 0 <= m < L (m=" + std::to_string(threshold) +
                         ", L=" + std::to_string(levels) + ")");
  if (!(delta >= 0.0 && delta < 0.5))
    throw ParameterError("two-level delta must satisfy 0 <= delta < 1/2");
  const auto n = static_cast<std::size_t>(levels) + 1;
  Matrix e(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t intended = static_cast<int>(i) <= threshold ? 0 : 1;
    e(i, intended) = 1.0 - delta;
    e(i, 1 - intended) = delta;
  }
  return EmissionMatrix(std::move(e), delta, threshold);
}

EmissionMatrix emission_multilevel(int levels, double delta) {
  if (levels < 1) throw ParameterError("level count L must be >= 1");
  if (!(delta >= 0.0 && delta < 1.0))
    throw ParameterError("multilevel delta must satisfy 0 <= delta < 1");
  const auto n = static_cast<std::size_t>(levels) + 1;
  Matrix e(n, n, delta / levels);
  for (std::size_t i = 0; i < n; ++i) e(i, i) = 1.0 - delta;
  return EmissionMatrix(std::move(e), delta, std::nullopt);
}

OutcomeSequence OutcomeSequence::from_index(std::uint64_t index, std::size_t alphabet, int length) {
  std::vector<Symbol> s(static_cast<std::size_t>(length));
  for (int n = length - 1; n >= 0; --n) {
    s[static_cast<std::size_t>(n)] = static_cast<Symbol>(index % alphabet);
    index /= alphabet;
  }
  return OutcomeSequence(std::move(s));
}

std::uint64_t OutcomeSequence::index(std::size_t alphabet) const {
  std::uint64_t idx = 0;
  for (Symbol s : symbols_) idx = idx * alphabet + s;
  return idx;
}

HmmModel::HmmModel(StochasticMatrix transitions, EmissionMatrix emissions, int readouts,
                   std::optional<FockReadout> params)
    : transitions_(std::move(transitions)),
      emissions_(std::move(emissions)),
      readouts_(readouts),
      params_(params) {
  if (transitions_.dim() != emissions_.states())
    throw ParameterError("transition and emission matrices disagree on the number of levels");
  if (transitions_.dim() < 2) throw ParameterError("model needs at least two levels");
  if (readouts_ < 1) throw ParameterError("number of readouts N must be >= 1");
  if (std::pow(emissions_.min_positive(), readouts_) < DBL_MIN)
    throw NumericError("linear-space likelihoods would underflow for N=" +
                       std::to_string(readouts_));
}

HmmModel build_model(const FockReadout& p) {
  if (p.readouts < 1) throw ParameterError("number of readouts N must be >= 1");
  auto gen = combined_generator(p.levels, p.kd_tau, p.ku_tau);
  auto t = transition_matrix(gen, 1.0);
  if (p.ancilla == Ancilla::two_level)
    return HmmModel(std::move(t), emission_two_level(p.levels, p.threshold, p.delta), p.readouts, p);
  if (p.threshold < 0 || p.threshold >= p.levels)
    throw ParameterError("threshold m must satisfy 0 <= m < L");
  return HmmModel(std::move(t), emission_multilevel(p.levels, p.delta), p.readouts, p);
}

void forward_step(const HmmModel& model, std::span<const double> in, Symbol symbol,
                  std::span<double> out) {
  const auto& t = model.transitions().entries();
  const auto& e = model.emissions();
  const std::size_t n = t.rows();
  for (std::size_t j = 0; j < n; ++j) out[j] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = in[i];
    if (a == 0.0) continue;
    const auto row = t.row(i);
    for (std::size_t j = 0; j < n; ++j) out[j] += a * row[j];
  }
  for (std::size_t j = 0; j < n; ++j) out[j] *= e(j, symbol);
}

void validate_sequence(const HmmModel& model, std::span<const Symbol> seq) {
  if (seq.size() != static_cast<std::size_t>(model.readouts()))
    throw ParameterError("sequence length " + std::to_string(seq.size()) +
                         " does not match N=" + std::to_string(model.readouts()));
  for (Symbol s : seq)
    if (s >= model.alphabet())
      throw ParameterError("symbol " + std::to_string(s) + " outside alphabet of size " +
                           std::to_string(model.alphabet()));
}

double likelihood(const HmmModel& model, int initial_level, std::span<const Symbol> seq) {
  validate_sequence(model, seq);
  if (initial_level < 0 || initial_level > model.levels())
    throw ParameterError("initial level outside 0..L");
  const std::size_t n = model.transitions().dim();
  std::vector<double> cur(n, 0.0), next(n);
  cur[static_cast<std::size_t>(initial_level)] = 1.0;
  for (Symbol s : seq) {
    forward_step(model, cur, s, next);
    cur.swap(next);
  }
  double total = 0.0;
  for (double v : cur) total += v;
  return total;
}

double likelihood(const HmmModel& model, Hypothesis h, const OutcomeSequence& seq) {
  return likelihood(model, model.initial_level(h), seq.symbols());
}

}  // namespace readout
