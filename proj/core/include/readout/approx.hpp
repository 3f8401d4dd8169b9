#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace readout {

/// Regime flags for the dominant-process approximations, which assume
/// N*delta << 1 and N*kappa*tau << 1. A flag is raised at N*x >= 0.5.
struct ValidityFlags {
  bool delta_large = false;
  bool decay_large = false;
  bool heating_large = false;

  bool ok() const { return !delta_large && !decay_large && !heating_large; }
  /// "ok" or a ';'-joined list such as "N*delta>=0.5;N*kd_tau>=0.5".
  std::string to_string() const;

  friend bool operator==(const ValidityFlags&, const ValidityFlags&) = default;
};

struct ApproxInputs {
  int levels = 1;
  int threshold = 0;
  int readouts = 1;
  double delta = 0.0;
  double kd_tau = 0.0;
  double ku_tau = 0.0;
};

/// Throws ParameterError unless N >= 1, 0 <= m < L and all probabilities in [0, 1).
void validate(const ApproxInputs& in);
ValidityFlags validity(const ApproxInputs& in);

/// Upper limit of the vote-error binomial tail. `readouts` sums the full
/// tail over N trials; `min_levels_readouts` stops at min(L, N), a variant
/// kept for comparison with tables that truncate the sum at L.
enum class TailLimit { readouts, min_levels_readouts };

struct ApproxResult {
  std::optional<double> p0_given_L;
  std::optional<double> pL_given_0;
  double infidelity = 0.0;
  ValidityFlags flags;

  double fidelity() const { return 1.0 - infidelity; }
};

/// ceil(N / 2).
int half_up(int readouts);

/// Binomial coefficient as a double (exact for the small arguments used here).
double binomial(int n, int k);

/// sum_{k=ceil(N/2)}^{upper} C(N,k) delta^k (1-delta)^(N-k).
double vote_error_tail(int readouts, double delta, int upper);

/// Decay-only, two-level ancilla: the two dominant fooling processes.
/// P(0|L) = T_LL(N tau) * tail + T_L0(ceil(N/2) tau) (1-delta)^N,
/// P(L|0) = tail.
ApproxResult approx_decay_full(const ApproxInputs& in, TailLimit limit = TailLimit::readouts);

/// 2 C(N, ceil(N/2)) delta^ceil(N/2) + (ceil(N/2) kd_tau)^L.
ApproxResult approx_decay_leading(const ApproxInputs& in);

/// Decay plus heating with threshold m:
/// P(0|L) = T_LL(N tau) tail + (1-delta)^N [exp(K_down ceil(N/2) tau)]_{m,L},
/// P(L|0) = T_00(N tau) tail + (1-delta)^N [exp(K_up ceil(N/2) tau)]_{m+1,0}.
ApproxResult approx_heating_full(const ApproxInputs& in, TailLimit limit = TailLimit::readouts);

/// C(L,m)(ceil(N/2) kd_tau)^(L-m) + (ceil(N/2) ku_tau)^(m+1) + 2 C(N,ceil(N/2)) delta^ceil(N/2).
ApproxResult approx_heating_leading(const ApproxInputs& in);

/// Majority voting with an (L+1)-level ancilla: the heating-leading rate
/// terms plus C(N,h)[((m+1) delta/L)^h + ((L-m) delta/L)^h], h = ceil(N/2).
ApproxResult approx_multilevel_leading(const ApproxInputs& in);

/// Cat code: 1 - 2 C(N,h) delta^h - (2/L!)(|alpha|^2 h kd_tau)^L.
ApproxResult approx_fidelity_cat(int levels, int readouts, double delta, double kd_tau, double alpha);

/// Binomial code: 1 - 2 C(N,h) delta^h - (2/L!)(L M / 2 * h kd_tau)^L.
ApproxResult approx_fidelity_binomial(int levels, int degree, int readouts, double delta,
                                      double kd_tau);

}  // namespace readout
