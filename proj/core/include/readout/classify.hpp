#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "readout/enumerate.hpp"
#include "readout/hmm.hpp"

namespace readout {

struct ClassificationDecision {
  Hypothesis decided = Hypothesis::zero;
  bool tie = false;

  friend bool operator==(const ClassificationDecision&, const ClassificationDecision&) = default;
};

/// Majority voting with threshold m. For a binary ancilla the vote for |L>
/// is the symbol e; for an (L+1)-level ancilla it is any symbol > m.
struct Majority {
  int threshold = 0;
};
struct MaximumLikelihood {};
using Strategy = std::variant<Majority, MaximumLikelihood>;

std::string_view strategy_name(const Strategy& s);

/// Symbols strictly above the returned value count as votes for |L>.
int vote_threshold(const EmissionMatrix& emissions, int m);

/// Decide |L> iff the number of symbols > vote_threshold is >= ceil(N/2).
/// An even N split goes to |L> with the tie flag set.
ClassificationDecision majority_vote(std::span<const Symbol> seq, int vote_threshold);

/// Decide |L> iff lambda_a(L) > lambda_a(0); exact ties go to |0> with the
/// tie flag set.
ClassificationDecision mle_classify(const HmmModel& model, std::span<const Symbol> seq);

ClassificationDecision classify(const HmmModel& model, const Strategy& strategy,
                                std::span<const Symbol> seq);

enum class Method { exact_majority, exact_mle, monte_carlo, approximation };
std::string_view method_name(Method m);

struct InfidelityReport {
  double p0_given_L = 0.0;
  double pL_given_0 = 0.0;
  double fidelity = 1.0;
  Method method = Method::exact_majority;
  std::optional<double> stderr_total;
  std::optional<double> stderr_0_given_L;
  std::optional<double> stderr_L_given_0;
  std::optional<std::string> rng_algorithm;
  std::optional<FockReadout> params;

  double infidelity() const { return p0_given_L + pL_given_0; }
};

/// Probability mass of each hypothesis split by classification outcome.
/// Row: true hypothesis; column: decided hypothesis.
struct ConfusionMasses {
  double zero_as_zero = 0.0;
  double zero_as_top = 0.0;
  double top_as_zero = 0.0;
  double top_as_top = 0.0;
  std::uint64_t ties = 0;

  friend ConfusionMasses operator+(const ConfusionMasses& a, const ConfusionMasses& b) {
    return {a.zero_as_zero + b.zero_as_zero, a.zero_as_top + b.zero_as_top,
            a.top_as_zero + b.top_as_zero, a.top_as_top + b.top_as_top, a.ties + b.ties};
  }
};

ConfusionMasses confusion_masses(const HmmModel& model, const Strategy& strategy,
                                 const EnumerationOptions& opts = {});

/// Exact level-2 infidelity by enumerating every readout record.
InfidelityReport exact_infidelity(const HmmModel& model, const Strategy& strategy,
                                  const EnumerationOptions& opts = {});

struct MonteCarloOptions {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

/// Sampled estimate of the level-2 error rates with binomial standard errors.
/// Trials are split into fixed-size blocks, each with its own counter-based
/// stream, so results depend only on (model, strategy, trials, seed).
InfidelityReport monte_carlo_infidelity(const HmmModel& model, const Strategy& strategy,
                                        const MonteCarloOptions& opts);

struct OptimalReadout {
  int readouts = 0;
  InfidelityReport report;
};

/// argmin over N in 1..max_readouts of the exact infidelity; the smallest N
/// wins ties. params.readouts is ignored.
OptimalReadout optimal_over_N(const FockReadout& params, const Strategy& strategy, int max_readouts,
                              const EnumerationOptions& opts = {});

}  // namespace readout
