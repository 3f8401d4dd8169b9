#include "readout/info.hpp"

#include <algorithm>
#include <cmath>

#include "readout/error.hpp"

namespace readout {

namespace {

constexpr std::uint64_t kMaterializeLimit = std::uint64_t{1} << 20;

struct Nothing {
  friend Nothing operator+(Nothing, Nothing) { return {}; }
};

struct Entropy {
  double bits = 0.0;
  friend Entropy operator+(Entropy a, Entropy b) { return {a.bits + b.bits}; }
};

// -p(a,b) log2 p(b|a), with zero-probability terms dropped.
double surprisal_term(double joint, double marginal) {
  if (joint <= 0.0) return 0.0;
  return -joint * std::log2(joint / marginal);
}

}  // namespace

ChannelDistributions channel_distributions(const HmmModel& model, const EnumerationOptions& opts) {
  EnumerationOptions capped = opts;
  capped.max_sequences = std::min(opts.max_sequences, kMaterializeLimit);
  check_budget(model.alphabet(), model.readouts(), capped.max_sequences);

  const auto count = static_cast<std::size_t>(sequence_count(model.alphabet(), model.readouts()));
  ChannelDistributions d;
  d.joint.resize(count);
  d.marginal.resize(count);
  d.posterior.resize(count);
  // Leaves arrive in canonical order within each chunk; index by the record.
  const std::size_t alphabet = model.alphabet();
  reduce_sequences<Nothing>(model, capped, [&](std::span<const Symbol> seq, double l0, double lt) {
    std::size_t idx = 0;
    for (Symbol s : seq) idx = idx * alphabet + s;
    const double j0 = 0.5 * l0, jt = 0.5 * lt;
    const double pa = j0 + jt;
    d.joint[idx] = {j0, jt};
    d.marginal[idx] = pa;
    d.posterior[idx] = pa > 0.0 ? std::array<double, 2>{j0 / pa, jt / pa} : std::array<double, 2>{0.0, 0.0};
    return Nothing{};
  });
  return d;
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double inverse_binary_entropy(double h) {
  if (!(h >= 0.0 && h <= 1.0 + 1e-12)) throw ParameterError("binary entropy must lie in [0, 1]");
  if (h <= 0.0) return 0.0;
  if (h >= 1.0) return 0.5;
  double lo = 0.0, hi = 0.5;
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid) < h)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double prior_entropy() { return -2.0 * (0.5 * std::log2(0.5)); }

double conditional_entropy(const HmmModel& model, const EnumerationOptions& opts) {
  const auto total = reduce_sequences<Entropy>(model, opts, [](std::span<const Symbol>, double l0, double lt) {
    const double j0 = 0.5 * l0, jt = 0.5 * lt;
    const double pa = j0 + jt;
    return Entropy{surprisal_term(j0, pa) + surprisal_term(jt, pa)};
  });
  return std::clamp(total.bits, 0.0, 1.0);
}

double mutual_information(const HmmModel& model, const EnumerationOptions& opts) {
  return prior_entropy() - conditional_entropy(model, opts);
}

FanoBound fano_bound_from_entropy(double conditional_entropy) {
  FanoBound b;
  b.conditional_entropy = conditional_entropy;
  b.error_probability = inverse_binary_entropy(conditional_entropy);
  b.infidelity = 2.0 * b.error_probability;
  return b;
}

FanoBound fano_infidelity_bound(const HmmModel& model, const EnumerationOptions& opts) {
  return fano_bound_from_entropy(conditional_entropy(model, opts));
}

}  // namespace readout
