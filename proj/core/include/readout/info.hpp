#pragma once

#include <array>
#include <vector>

#include "readout/enumerate.hpp"
#include "readout/hmm.hpp"

namespace readout {

/// Distributions over the initial state B (uniform over {0, L}) and the
/// readout record A, materialized for every sequence in canonical order.
struct ChannelDistributions {
  std::array<double, 2> prior{0.5, 0.5};
  std::vector<std::array<double, 2>> joint;      // p(a, b) = lambda_a(b) / 2
  std::vector<double> marginal;                  // p(a)
  std::vector<std::array<double, 2>> posterior;  // p(b | a); zero where p(a) == 0
};

/// Materialization is capped at 2^20 sequences in addition to opts.max_sequences.
ChannelDistributions channel_distributions(const HmmModel& model, const EnumerationOptions& opts = {});

/// Entropy of a Bernoulli(p) variable in bits, with 0 log 0 = 0.
double binary_entropy(double p);

/// The p in [0, 1/2] with binary_entropy(p) == h, found by bisection
/// (at most 200 steps, stopping at interval width 1e-12).
double inverse_binary_entropy(double h);

/// H(B), always exactly one bit under the uniform prior.
double prior_entropy();

/// H(B|A) in bits.
double conditional_entropy(const HmmModel& model, const EnumerationOptions& opts = {});

/// I(A;B) = H(B) - H(B|A).
double mutual_information(const HmmModel& model, const EnumerationOptions& opts = {});

struct FanoBound {
  double conditional_entropy = 0.0;
  double error_probability = 0.0;  // p_e*
  double infidelity = 0.0;         // 2 p_e*
};

/// Lower bound on the level-2 infidelity of any classifier: with two
/// hypotheses H(B|A) <= H2(p_e), so 1 - F = 2 p_e >= 2 H2^{-1}(H(B|A)).
FanoBound fano_infidelity_bound(const HmmModel& model, const EnumerationOptions& opts = {});
FanoBound fano_bound_from_entropy(double conditional_entropy);

}  // namespace readout
