#include "readout/encodings.hpp"

#include <cmath>
#include <string>

#include "readout/error.hpp"

namespace readout {

namespace {

void require_cat(double alpha, int two_l, int residue) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ParameterError("cat amplitude must be >= 0");
  if (two_l < 2 || two_l % 2 != 0) throw ParameterError("cat component count 2L must be even and >= 2");
  if (residue < 0) throw ParameterError("cat residue must be >= 0");
}

double falling_factorial(int n, int order) {
  if (n < order) return 0.0;
  double f = 1.0;
  for (int i = 0; i < order; ++i) f *= n - i;
  return f;
}

double poisson_weight(double mean, int k) {
  if (mean == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(-mean + k * std::log(mean) - std::lgamma(k + 1.0));
}

// Ratio test: beyond the cutoff successive Poisson terms shrink by at most
// mean / (truncation + 2), so the tail is a dominated geometric series.
bool tail_small(double mean, int truncation) {
  const double ratio = mean / (truncation + 2.0);
  return ratio < 1.0 && poisson_weight(mean, truncation + 1) / (1.0 - ratio) <= kCatTailBound;
}

// Unnormalized Poisson weights on the residue class, up to the truncation.
std::vector<double> residue_weights(double alpha, int two_l, int residue, int truncation) {
  require_cat(alpha, two_l, residue);
  if (truncation == 0) truncation = admissible_cat_truncation(alpha, two_l);
  const int needed = minimum_cat_truncation(alpha, two_l);
  if (truncation < needed)
    throw ParameterError("cat truncation " + std::to_string(truncation) + " below minimum " +
                         std::to_string(needed));
  const double mean = alpha * alpha;
  if (!tail_small(mean, truncation))
    throw ParameterError("cat truncation " + std::to_string(truncation) +
                         " leaves a Poisson tail above 1e-14");
  std::vector<double> w(static_cast<std::size_t>(truncation) + 1, 0.0);
  for (int k = residue % two_l; k <= truncation; k += two_l) w[static_cast<std::size_t>(k)] = poisson_weight(mean, k);
  return w;
}

}  // namespace

int minimum_cat_truncation(double alpha, int two_l) {
  const double mean = alpha * alpha;
  return static_cast<int>(std::ceil(mean + 10.0 * std::sqrt(mean) + two_l));
}

int admissible_cat_truncation(double alpha, int two_l) {
  require_cat(alpha, two_l, 0);
  int t = minimum_cat_truncation(alpha, two_l);
  while (!tail_small(alpha * alpha, t)) ++t;
  return t;
}

double cat_normalization(double alpha, int two_l, int residue, int truncation) {
  double sum = 0.0;
  for (double w : residue_weights(alpha, two_l, residue, truncation)) sum += w;
  return sum;
}

std::vector<double> cat_fock_distribution(double alpha, int two_l, int residue, int truncation) {
  auto w = residue_weights(alpha, two_l, residue, truncation);
  double norm = 0.0;
  for (double v : w) norm += v;
  if (!(norm > 0.0)) throw NumericError("cat residue class has zero weight");
  for (double& v : w) v /= norm;
  return w;
}

std::vector<double> cat_fock_amplitudes(double alpha, int two_l, int residue, int truncation) {
  auto p = cat_fock_distribution(alpha, two_l, residue, truncation);
  for (double& v : p) v = std::sqrt(v);
  return p;
}

double cat_loss_moment(double alpha, int two_l, int residue, int order, int truncation) {
  if (order < 0) throw ParameterError("loss order must be >= 0");
  const auto p = cat_fock_distribution(alpha, two_l, residue, truncation);
  double moment = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k)
    moment += p[k] * falling_factorial(static_cast<int>(k), order);
  return moment;
}

double cat_loss_moment_approx(double alpha, int order) { return std::pow(alpha * alpha, order); }

std::vector<double> binomial_fock_amplitudes(int levels, int degree, int codeword) {
  if (levels < 1 || degree < 1) throw ParameterError("binomial code needs L >= 1 and M >= 1");
  if (codeword != 0 && codeword != 1) throw ParameterError("binomial codeword must be 0 or 1");
  std::vector<double> amp(static_cast<std::size_t>(levels * degree) + 1, 0.0);
  const double scale = std::ldexp(1.0, -(degree - 1));
  for (int p = codeword; p <= degree; p += 2)
    amp[static_cast<std::size_t>(p * levels)] = std::sqrt(binomial(degree, p) * scale);
  return amp;
}

double binomial_loss_moment(int levels, int degree, int codeword, int order) {
  if (levels < 1 || degree < 1) throw ParameterError("binomial code needs L >= 1 and M >= 1");
  if (codeword != 0 && codeword != 1) throw ParameterError("binomial codeword must be 0 or 1");
  if (order < 0) throw ParameterError("loss order must be >= 0");
  double moment = 0.0;
  for (int p = codeword; p <= degree; p += 2)
    moment += binomial(degree, p) * falling_factorial(p * levels, order);
  return std::ldexp(moment, -(degree - 1));
}

BinomialMeanPhoton binomial_mean_photon(int levels, int degree) {
  return {binomial_loss_moment(levels, degree, 0, 1), binomial_loss_moment(levels, degree, 1, 1)};
}

double binomial_loss_moment_approx(int levels, int degree, int order) {
  return std::pow(levels * degree / 2.0, order);
}

double kraus_loss_probability(double falling_moment, int order, double kd_tau_total) {
  if (falling_moment < 0.0 || order < 0 || kd_tau_total < 0.0)
    throw ParameterError("Kraus loss inputs must be nonnegative");
  double factorial = 1.0;
  for (int k = 2; k <= order; ++k) factorial *= k;
  return std::pow(kd_tau_total, order) / factorial * falling_moment;
}

ApproxResult approx_code_fidelity(const CodeParams& code, int readouts, double delta, double kd_tau) {
  struct Visitor {
    int readouts;
    double delta, kd_tau;
    ApproxResult operator()(const FockCode& c) const {
      return approx_decay_leading({c.levels, 0, readouts, delta, kd_tau, 0.0});
    }
    ApproxResult operator()(const CatCode& c) const {
      return approx_fidelity_cat(c.levels, readouts, delta, kd_tau, c.alpha);
    }
    ApproxResult operator()(const BinomialCode& c) const {
      return approx_fidelity_binomial(c.levels, c.degree, readouts, delta, kd_tau);
    }
  };
  return std::visit(Visitor{readouts, delta, kd_tau}, code);
}

int code_levels(const CodeParams& code) {
  return std::visit([](const auto& c) { return c.levels; }, code);
}

}  // namespace readout
