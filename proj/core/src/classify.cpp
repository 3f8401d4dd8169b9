#include "readout/classify.hpp"

#include "readout/error.hpp"

namespace readout {

std::string_view strategy_name(const Strategy& s) {
  return std::holds_alternative<Majority>(s) ? "majority" : "mle";
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::exact_majority: return "exact-majority";
    case Method::exact_mle: return "exact-mle";
    case Method::monte_carlo: return "monte-carlo";
    case Method::approximation: return "approximation";
  }
  return "unknown";
}

int vote_threshold(const EmissionMatrix& emissions, int m) {
  return emissions.symbols() == 2 ? 0 : m;
}

ClassificationDecision majority_vote(std::span<const Symbol> seq, int vote_threshold) {
  std::size_t votes = 0;
  for (Symbol s : seq)
    if (static_cast<int>(s) > vote_threshold) ++votes;
  const std::size_t needed = (seq.size() + 1) / 2;
  return {votes >= needed ? Hypothesis::top : Hypothesis::zero,
          seq.size() % 2 == 0 && 2 * votes == seq.size()};
}

namespace {

ClassificationDecision compare_likelihoods(double l0, double lt) {
  if (lt > l0) return {Hypothesis::top, false};
  return {Hypothesis::zero, lt == l0};
}

ClassificationDecision decide(const HmmModel& model, const Strategy& strategy,
                              std::span<const Symbol> seq, double l0, double lt) {
  if (const auto* maj = std::get_if<Majority>(&strategy))
    return majority_vote(seq, vote_threshold(model.emissions(), maj->threshold));
  return compare_likelihoods(l0, lt);
}

}  // namespace

ClassificationDecision mle_classify(const HmmModel& model, std::span<const Symbol> seq) {
  return compare_likelihoods(likelihood(model, 0, seq), likelihood(model, model.levels(), seq));
}

ClassificationDecision classify(const HmmModel& model, const Strategy& strategy,
                                std::span<const Symbol> seq) {
  if (const auto* maj = std::get_if<Majority>(&strategy))
    return majority_vote(seq, vote_threshold(model.emissions(), maj->threshold));
  return mle_classify(model, seq);
}

ConfusionMasses confusion_masses(const HmmModel& model, const Strategy& strategy,
                                 const EnumerationOptions& opts) {
  if (const auto* maj = std::get_if<Majority>(&strategy);
      maj && (maj->threshold < 0 || maj->threshold >= model.levels()))
    throw ParameterError("majority threshold m must satisfy 0 <= m < L");
  return reduce_sequences<ConfusionMasses>(
      model, opts, [&](std::span<const Symbol> seq, double l0, double lt) {
        const auto d = decide(model, strategy, seq, l0, lt);
        ConfusionMasses c;
        if (d.decided == Hypothesis::zero) {
          c.zero_as_zero = l0;
          c.top_as_zero = lt;
        } else {
          c.zero_as_top = l0;
          c.top_as_top = lt;
        }
        c.ties = d.tie ? 1 : 0;
        return c;
      });
}

InfidelityReport exact_infidelity(const HmmModel& model, const Strategy& strategy,
                                  const EnumerationOptions& opts) {
  const auto masses = confusion_masses(model, strategy, opts);
  InfidelityReport r;
  r.p0_given_L = masses.top_as_zero;
  r.pL_given_0 = masses.zero_as_top;
  r.fidelity = 1.0 - r.p0_given_L - r.pL_given_0;
  r.method = std::holds_alternative<Majority>(strategy) ? Method::exact_majority : Method::exact_mle;
  r.params = model.params();
  return r;
}

OptimalReadout optimal_over_N(const FockReadout& params, const Strategy& strategy, int max_readouts,
                              const EnumerationOptions& opts) {
  if (max_readouts < 1) throw ParameterError("N_max must be >= 1");
  OptimalReadout best;
  for (int n = 1; n <= max_readouts; ++n) {
    FockReadout p = params;
    p.readouts = n;
    auto report = exact_infidelity(build_model(p), strategy, opts);
    if (best.readouts == 0 || report.infidelity() < best.report.infidelity()) {
      best.readouts = n;
      best.report = std::move(report);
    }
  }
  return best;
}

}  // namespace readout
