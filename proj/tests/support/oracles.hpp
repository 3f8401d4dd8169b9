#pragma once

// Independent reference computations used only by the test suites. None of
// these share code paths with the library routines they check.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "readout/hmm.hpp"
#include "readout/matrix.hpp"

namespace readout::oracle {

/// exp(A) by a plain Taylor series with no scaling (fine for small ||A||).
inline Matrix taylor_expm(const Matrix& a, int terms = 60) {
  const std::size_t n = a.rows();
  Matrix result = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (int k = 1; k < terms; ++k) {
    Matrix next(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t l = 0; l < n; ++l) s += term(i, l) * a(l, j);
        next(i, j) = s / k;
      }
    term = next;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) result(i, j) += term(i, j);
  }
  return result;
}

/// lambda_a(i) by summing the product over every hidden path explicitly.
inline double path_sum_likelihood(const HmmModel& model, int initial, std::span<const Symbol> seq) {
  const auto& t = model.transitions();
  const auto& e = model.emissions();
  const std::size_t n = t.dim();
  const std::size_t len = seq.size();
  std::vector<std::size_t> path(len, 0);
  double total = 0.0;
  while (true) {
    double p = 1.0;
    std::size_t prev = static_cast<std::size_t>(initial);
    for (std::size_t k = 0; k < len && p != 0.0; ++k) {
      p *= t(prev, path[k]) * e(path[k], seq[k]);
      prev = path[k];
    }
    total += p;
    std::size_t k = len;
    while (k > 0) {
      --k;
      if (++path[k] < n) break;
      path[k] = 0;
      if (k == 0) return total;
    }
    if (len == 0) return total;
  }
}

/// All symbol sequences of length N in canonical order.
inline std::vector<std::vector<Symbol>> all_sequences(std::size_t alphabet, int length) {
  std::vector<std::vector<Symbol>> out;
  std::vector<Symbol> cur(static_cast<std::size_t>(length), 0);
  while (true) {
    out.push_back(cur);
    int k = length - 1;
    while (k >= 0) {
      auto& s = cur[static_cast<std::size_t>(k)];
      if (++s < alphabet) break;
      s = 0;
      --k;
    }
    if (k < 0) return out;
  }
}

/// Mean first-passage time |L> -> |0> under pure decay, sampled as a sum
/// of exponential holding times with rates n * kappa.
inline double sampled_decay_time(int levels, double kappa, int trajectories, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  double total = 0.0;
  for (int t = 0; t < trajectories; ++t) {
    double time = 0.0;
    for (int n = levels; n >= 1; --n) time += std::exponential_distribution<double>(n * kappa)(gen);
    total += time;
  }
  return total / trajectories;
}

}  // namespace readout::oracle
