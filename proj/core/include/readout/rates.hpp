#pragma once

#include "readout/matrix.hpp"

namespace readout {

/// Rate generator of a birth-death process on Fock levels 0..L.
/// Stored column-as-source: entry (i, j) is the rate from level j to level i,
/// so every column sums to zero.
class RateGenerator {
 public:
  RateGenerator(Matrix entries, double kappa_down, double kappa_up);

  int levels() const { return static_cast<int>(entries_.rows()) - 1; }
  std::size_t dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  double kappa_down() const { return kappa_down_; }
  double kappa_up() const { return kappa_up_; }

  friend RateGenerator operator+(const RateGenerator& a, const RateGenerator& b);

 private:
  Matrix entries_;
  double kappa_down_;
  double kappa_up_;
};

/// Row-stochastic matrix of one-step transition probabilities.
/// Stored row-as-source: entry (i, j) is P(level i -> level j) over `tau`.
class StochasticMatrix {
 public:
  StochasticMatrix(Matrix entries, double tau);

  std::size_t dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  double tau() const { return tau_; }

 private:
  Matrix entries_;
  double tau_;
};

/// Excitation loss: level j decays to j-1 at rate j * kappa_down.
RateGenerator decay_generator(int levels, double kappa_down);

/// Excitation gain: level j heats to j+1 at rate (j+1) * kappa_up for j < L.
/// The top level has no outgoing heating (the ladder is truncated at L).
RateGenerator heating_generator(int levels, double kappa_up);

/// decay_generator(L, kd) + heating_generator(L, ku).
RateGenerator combined_generator(int levels, double kappa_down, double kappa_up);

/// T_ij(tau) = [exp(K tau)]_ji. The only place the source convention flips.
StochasticMatrix transition_matrix(const RateGenerator& gen, double tau);

/// Decay-only one-step probability from level i to level j, in closed form:
/// C(i, j) (e^{kt} - 1)^{i-j} e^{-i kt}; zero when j > i.
double decay_transition_closed_form(int i, int j, double kappa_tau);

/// Mean first-passage time from level L to the vacuum under pure decay:
/// H_L / kappa_down.
double expected_decay_time(int levels, double kappa_down);

}  // namespace readout
