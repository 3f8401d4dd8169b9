#pragma once

#include <variant>
#include <vector>

#include "readout/approx.hpp"

namespace readout {

struct FockCode {
  int levels = 1;
};

/// Cat code built from 2L coherent states of amplitude alpha. `truncation`
/// is the highest Fock index kept in series expansions; 0 selects
/// admissible_cat_truncation.
struct CatCode {
  int levels = 1;
  double alpha = 1.0;
  int truncation = 0;
};

struct BinomialCode {
  int levels = 1;
  int degree = 1;
};

using CodeParams = std::variant<FockCode, CatCode, BinomialCode>;

/// Bound on the discarded Poisson tail of a truncated cat series.
inline constexpr double kCatTailBound = 1e-14;

/// Lower limit on any cat truncation: ceil(|alpha|^2 + 10 |alpha| + 2L).
int minimum_cat_truncation(double alpha, int two_l);

/// Smallest truncation at or above the lower limit whose tail bound is
/// below kCatTailBound. Used whenever a truncation of 0 is passed.
int admissible_cat_truncation(double alpha, int two_l);

/// Poisson-weighted Fock distribution of the cat state with photon number
/// congruent to n modulo 2L. `weights[k]` is the probability of Fock index k
/// (zero outside the residue class); the vector has truncation + 1 entries.
/// Throws ParameterError when the truncation is below the minimum or the
/// ratio-test tail bound exceeds 1e-14.
std::vector<double> cat_fock_distribution(double alpha, int two_l, int residue, int truncation);

/// Fock amplitudes of the normalized cat codeword with residue n (real alpha).
std::vector<double> cat_fock_amplitudes(double alpha, int two_l, int residue, int truncation);

/// N_alpha^n = sum over k = n mod 2L of e^{-|alpha|^2} |alpha|^{2k} / k!.
double cat_normalization(double alpha, int two_l, int residue, int truncation);

/// Exact <n(n-1)...(n-order+1)> of the normalized residue-class state.
double cat_loss_moment(double alpha, int two_l, int residue, int order, int truncation);

/// The large-alpha form |alpha|^(2 order).
double cat_loss_moment_approx(double alpha, int order);

/// Fock amplitudes of the binomial codewords: index 0 -> |0_B>, 1 -> |1_B>.
std::vector<double> binomial_fock_amplitudes(int levels, int degree, int codeword);

struct BinomialMeanPhoton {
  double zero = 0.0;
  double one = 0.0;
  double average() const { return 0.5 * (zero + one); }
};

/// Mean photon number of each binomial codeword from its Fock expansion.
BinomialMeanPhoton binomial_mean_photon(int levels, int degree);

/// Exact falling-factorial moment of one binomial codeword.
double binomial_loss_moment(int levels, int degree, int codeword, int order);

/// The codeword-averaged form (L M / 2)^order.
double binomial_loss_moment_approx(int levels, int degree, int order);

/// Small-loss probability of exactly `order` excitation losses:
/// (kd_tau_total)^order / order! times the falling-factorial moment.
double kraus_loss_probability(double falling_moment, int order, double kd_tau_total);

/// Leading-order majority-vote readout fidelity for any code family.
ApproxResult approx_code_fidelity(const CodeParams& code, int readouts, double delta, double kd_tau);

int code_levels(const CodeParams& code);

}  // namespace readout
