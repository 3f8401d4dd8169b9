#include "readout/rates.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "readout/error.hpp"

namespace readout {

namespace {

void require_levels(int levels) {
  if (levels < 1)
    throw ParameterError("level count L must be >= 1, got " + std::to_string(levels));
}

void require_rate(double rate, const char* name) {
  if (!(rate >= 0.0) || !std::isfinite(rate))
    throw ParameterError(std::string(name) + " must be a finite nonnegative rate");
}

}  // namespace

RateGenerator::RateGenerator(Matrix entries, double kappa_down, double kappa_up)
    : entries_(std::move(entries)), kappa_down_(kappa_down), kappa_up_(kappa_up) {
  assert(entries_.rows() == entries_.cols());
}

RateGenerator operator+(const RateGenerator& a, const RateGenerator& b) {
  if (a.dim() != b.dim()) throw ParameterError("generator dimensions differ");
  return RateGenerator(a.entries_ + b.entries_, a.kappa_down_ + b.kappa_down_,
                       a.kappa_up_ + b.kappa_up_);
}

StochasticMatrix::StochasticMatrix(Matrix entries, double tau)
    : entries_(std::move(entries)), tau_(tau) {
  assert(entries_.rows() == entries_.cols());
}

RateGenerator decay_generator(int levels, double kappa_down) {
  require_levels(levels);
  require_rate(kappa_down, "kappa_down");
  const auto n = static_cast<std::size_t>(levels) + 1;
  Matrix k(n, n);
  for (std::size_t j = 1; j < n; ++j) {
    const double rate = static_cast<double>(j) * kappa_down;
    k(j, j) = -rate;
    k(j - 1, j) = rate;
  }
  return RateGenerator(std::move(k), kappa_down, 0.0);
}

RateGenerator heating_generator(int levels, double kappa_up) {
  require_levels(levels);
  require_rate(kappa_up, "kappa_up");
  const auto n = static_cast<std::size_t>(levels) + 1;
  Matrix k(n, n);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double rate = static_cast<double>(j + 1) * kappa_up;
    k(j, j) = -rate;
    k(j + 1, j) = rate;
  }
  return RateGenerator(std::move(k), 0.0, kappa_up);
}

RateGenerator combined_generator(int levels, double kappa_down, double kappa_up) {
  return decay_generator(levels, kappa_down) + heating_generator(levels, kappa_up);
}

StochasticMatrix transition_matrix(const RateGenerator& gen, double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau))
    throw ParameterError("duration tau must be finite and >= 0");
  Matrix t = expm(gen.entries() * tau).transpose();
  // Clip roundoff below zero; rows are renormalized so sums stay exact to ulp.
  for (std::size_t i = 0; i < t.rows(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (t(i, j) < 0.0) t(i, j) = 0.0;
      sum += t(i, j);
    }
    for (std::size_t j = 0; j < t.cols(); ++j) t(i, j) /= sum;
  }
  return StochasticMatrix(std::move(t), tau);
}

double decay_transition_closed_form(int i, int j, double kappa_tau) {
  if (j > i || j < 0) return 0.0;
  if (i == 0) return 1.0;
  double binom = 1.0;
  for (int k = 1; k <= j; ++k) binom = binom * (i - j + k) / k;
  return binom * std::pow(std::expm1(kappa_tau), i - j) * std::exp(-i * kappa_tau);
}

double expected_decay_time(int levels, double kappa_down) {
  require_levels(levels);
  if (!(kappa_down > 0.0)) throw ParameterError("kappa_down must be > 0 for a finite decay time");
  double harmonic = 0.0;
  for (int n = 1; n <= levels; ++n) harmonic += 1.0 / n;
  return harmonic / kappa_down;
}

}  // namespace readout
