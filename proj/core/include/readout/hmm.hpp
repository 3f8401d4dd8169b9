#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "readout/matrix.hpp"
#include "readout/rates.hpp"

namespace readout {

using Symbol = std::uint8_t;

/// Emission probabilities: entry (i, a) is P(ancilla symbol a | Fock level i).
class EmissionMatrix {
 public:
  /// Arbitrary row-stochastic emissions (validated). delta is recorded as NaN.
  static EmissionMatrix from_entries(Matrix entries);

  std::size_t states() const { return entries_.rows(); }
  std::size_t symbols() const { return entries_.cols(); }
  const Matrix& entries() const { return entries_; }
  double operator()(std::size_t level, std::size_t symbol) const { return entries_(level, symbol); }
  double delta() const { return delta_; }
  std::optional<int> threshold() const { return threshold_; }

  /// Smallest nonzero entry; the per-step floor used by the underflow guard.
  double min_positive() const;

 private:
  EmissionMatrix(Matrix entries, double delta, std::optional<int> threshold);

  Matrix entries_;
  double delta_;
  std::optional<int> threshold_;

  friend EmissionMatrix emission_two_level(int, int, double);
  friend EmissionMatrix emission_multilevel(int, double);
};

/// Two-level ancilla with threshold m: levels <= m should read g (symbol 0),
/// levels > m should read e (symbol 1); each readout is misleading with
/// probability delta. Requires 0 <= m < L and 0 <= delta < 1/2.
EmissionMatrix emission_two_level(int levels, int threshold, double delta);

/// (L+1)-level ancilla: level i reads symbol i with probability 1 - delta,
/// every other symbol with delta / L. Requires 0 <= delta < 1.
EmissionMatrix emission_multilevel(int levels, double delta);

enum class Ancilla { two_level, multilevel };

/// Scalar description of a Fock-code readout experiment. Rates are given as
/// dimensionless products with the level-1 readout duration.
struct FockReadout {
  int levels = 1;
  int threshold = 0;
  int readouts = 1;
  double delta = 0.0;
  double kd_tau = 0.0;
  double ku_tau = 0.0;
  Ancilla ancilla = Ancilla::two_level;
};

/// The two competing initial states, Fock |0> and Fock |L>.
enum class Hypothesis : std::uint8_t { zero, top };

/// Ordered record of N ancilla readout symbols.
class OutcomeSequence {
 public:
  OutcomeSequence() = default;
  OutcomeSequence(std::initializer_list<Symbol> symbols) : symbols_(symbols) {}
  explicit OutcomeSequence(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}

  /// Decode a base-`alphabet` integer with the first readout as the most
  /// significant digit.
  static OutcomeSequence from_index(std::uint64_t index, std::size_t alphabet, int length);
  std::uint64_t index(std::size_t alphabet) const;

  std::size_t size() const { return symbols_.size(); }
  std::span<const Symbol> symbols() const { return symbols_; }
  Symbol operator[](std::size_t n) const { return symbols_[n]; }

  friend bool operator==(const OutcomeSequence&, const OutcomeSequence&) = default;

 private:
  std::vector<Symbol> symbols_;
};

/// Transition + emission model for N repeated level-1 readouts.
class HmmModel {
 public:
  /// Throws ParameterError on shape mismatch and NumericError when the
  /// smallest per-step emission factor raised to N underflows.
  HmmModel(StochasticMatrix transitions, EmissionMatrix emissions, int readouts,
           std::optional<FockReadout> params = std::nullopt);

  const StochasticMatrix& transitions() const { return transitions_; }
  const EmissionMatrix& emissions() const { return emissions_; }
  int readouts() const { return readouts_; }
  int levels() const { return static_cast<int>(transitions_.dim()) - 1; }
  std::size_t alphabet() const { return emissions_.symbols(); }
  const std::optional<FockReadout>& params() const { return params_; }

  int initial_level(Hypothesis h) const { return h == Hypothesis::zero ? 0 : levels(); }

 private:
  StochasticMatrix transitions_;
  EmissionMatrix emissions_;
  int readouts_;
  std::optional<FockReadout> params_;
};

/// Build the transition and emission matrices for a Fock readout experiment.
HmmModel build_model(const FockReadout& params);

/// One forward step: out_j = (sum_i in_i T_ij) * E_{j, symbol}.
void forward_step(const HmmModel& model, std::span<const double> in, Symbol symbol,
                  std::span<double> out);

/// lambda_a(i): probability of emitting `seq` given initial level i.
/// The initial level does not emit; each step transitions first, then emits.
double likelihood(const HmmModel& model, int initial_level, std::span<const Symbol> seq);
double likelihood(const HmmModel& model, Hypothesis h, const OutcomeSequence& seq);

/// Throws ParameterError unless seq has length N and symbols within the alphabet.
void validate_sequence(const HmmModel& model, std::span<const Symbol> seq);

}  // namespace readout
