#include "readout/approx.hpp"

#include <cmath>
#include <string>

#include "readout/error.hpp"
#include "readout/rates.hpp"

namespace readout {

std::string ValidityFlags::to_string() const {
  std::string out;
  auto add = [&](const char* s) {
    if (!out.empty()) out += ';';
    out += s;
  };
  if (delta_large) add("N*delta>=0.5");
  if (decay_large) add("N*kd_tau>=0.5");
  if (heating_large) add("N*ku_tau>=0.5");
  return out.empty() ? "ok" : out;
}

namespace {

bool is_probability(double p) { return p >= 0.0 && p < 1.0; }

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double delta_term(int readouts, double delta) {
  const int h = half_up(readouts);
  return 2.0 * binomial(readouts, h) * std::pow(delta, h);
}

int tail_upper(const ApproxInputs& in, TailLimit limit) {
  return limit == TailLimit::readouts ? in.readouts : std::min(in.levels, in.readouts);
}

ApproxResult from_components(double p0_given_L, double pL_given_0, ValidityFlags flags) {
  ApproxResult r;
  r.p0_given_L = p0_given_L;
  r.pL_given_0 = pL_given_0;
  r.infidelity = p0_given_L + pL_given_0;
  r.flags = flags;
  return r;
}

}  // namespace

void validate(const ApproxInputs& in) {
  if (in.readouts < 1) throw ParameterError("N must be >= 1");
  if (in.levels < 1) throw ParameterError("L must be >= 1");
  if (in.threshold < 0 || in.threshold >= in.levels)
    throw ParameterError("threshold m must satisfy 0 <= m < L");
  if (!is_probability(in.delta) || !is_probability(in.kd_tau) || !is_probability(in.ku_tau))
    throw ParameterError("delta, kd_tau and ku_tau must lie in [0, 1)");
}

ValidityFlags validity(const ApproxInputs& in) {
  const double n = in.readouts;
  return {n * in.delta >= 0.5, n * in.kd_tau >= 0.5, n * in.ku_tau >= 0.5};
}

int half_up(int readouts) { return (readouts + 1) / 2; }

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return std::round(c);
}

double vote_error_tail(int readouts, double delta, int upper) {
  double sum = 0.0;
  for (int k = half_up(readouts); k <= std::min(upper, readouts); ++k)
    sum += binomial(readouts, k) * std::pow(delta, k) * std::pow(1.0 - delta, readouts - k);
  return sum;
}

ApproxResult approx_decay_full(const ApproxInputs& in, TailLimit limit) {
  validate(in);
  const int L = in.levels;
  const int h = half_up(in.readouts);
  const auto gen = decay_generator(L, in.kd_tau);
  const double tail = vote_error_tail(in.readouts, in.delta, tail_upper(in, limit));
  const double survive = transition_matrix(gen, in.readouts)(L, L);
  const double emptied = transition_matrix(gen, h)(L, 0);
  const double clean = std::pow(1.0 - in.delta, in.readouts);
  return from_components(survive * tail + emptied * clean, tail, validity(in));
}

ApproxResult approx_decay_leading(const ApproxInputs& in) {
  validate(in);
  const int h = half_up(in.readouts);
  ApproxResult r;
  r.infidelity = delta_term(in.readouts, in.delta) + std::pow(h * in.kd_tau, in.levels);
  r.flags = validity(in);
  return r;
}

ApproxResult approx_heating_full(const ApproxInputs& in, TailLimit limit) {
  validate(in);
  const int L = in.levels;
  const int m = in.threshold;
  const int h = half_up(in.readouts);
  const double tail = vote_error_tail(in.readouts, in.delta, tail_upper(in, limit));
  const auto full = transition_matrix(combined_generator(L, in.kd_tau, in.ku_tau), in.readouts);
  // Row-as-source: [exp(K t)]_{dest, src} == T(t)(src, dest).
  const double decayed_to_m = transition_matrix(decay_generator(L, in.kd_tau), h)(L, m);
  const double heated_to_m1 = transition_matrix(heating_generator(L, in.ku_tau), h)(0, m + 1);
  const double clean = std::pow(1.0 - in.delta, in.readouts);
  return from_components(full(L, L) * tail + clean * decayed_to_m,
                         full(0, 0) * tail + clean * heated_to_m1, validity(in));
}

ApproxResult approx_heating_leading(const ApproxInputs& in) {
  validate(in);
  const int L = in.levels;
  const int m = in.threshold;
  const int h = half_up(in.readouts);
  ApproxResult r;
  r.infidelity = binomial(L, m) * std::pow(h * in.kd_tau, L - m) + std::pow(h * in.ku_tau, m + 1) +
                 delta_term(in.readouts, in.delta);
  r.flags = validity(in);
  return r;
}

ApproxResult approx_multilevel_leading(const ApproxInputs& in) {
  validate(in);
  const int L = in.levels;
  const int m = in.threshold;
  const int h = half_up(in.readouts);
  const double fool_zero = std::pow((m + 1) * in.delta / L, h);
  const double fool_top = std::pow((L - m) * in.delta / L, h);
  ApproxResult r;
  r.infidelity = binomial(L, m) * std::pow(h * in.kd_tau, L - m) + std::pow(h * in.ku_tau, m + 1) +
                 binomial(in.readouts, h) * (fool_zero + fool_top);
  r.flags = validity(in);
  return r;
}

namespace {

ApproxResult code_fidelity(int levels, int readouts, double delta, double kd_tau,
                           double mean_photons) {
  const int h = half_up(readouts);
  ApproxResult r;
  r.infidelity = delta_term(readouts, delta) +
                 2.0 / factorial(levels) * std::pow(mean_photons * h * kd_tau, levels);
  r.flags = validity({levels, 0, readouts, delta, kd_tau, 0.0});
  return r;
}

}  // namespace

ApproxResult approx_fidelity_cat(int levels, int readouts, double delta, double kd_tau, double alpha) {
  validate({levels, 0, readouts, delta, kd_tau, 0.0});
  if (!(alpha > 0.0)) throw ParameterError("cat amplitude alpha must be > 0");
  return code_fidelity(levels, readouts, delta, kd_tau, alpha * alpha);
}

ApproxResult approx_fidelity_binomial(int levels, int degree, int readouts, double delta,
                                      double kd_tau) {
  validate({levels, 0, readouts, delta, kd_tau, 0.0});
  if (degree < 1) throw ParameterError("binomial degree M must be >= 1");
  return code_fidelity(levels, readouts, delta, kd_tau, levels * degree / 2.0);
}

}  // namespace readout
