#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "readout/hmm.hpp"

namespace readout {

/// Default cap on the number of sequences visited by exhaustive enumeration:
/// 2^24, i.e. N <= 24 for a binary alphabet.
inline constexpr std::uint64_t kDefaultSequenceBudget = std::uint64_t{1} << 24;

struct EnumerationOptions {
  std::uint64_t max_sequences = kDefaultSequenceBudget;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// alphabet^length, saturating at UINT64_MAX.
std::uint64_t sequence_count(std::size_t alphabet, int length);

/// Throws BudgetError naming the limit when alphabet^N exceeds the budget.
void check_budget(std::size_t alphabet, int length, std::uint64_t max_sequences);

/// Resolve a thread request (0 = hardware concurrency, at least 1).
unsigned resolve_threads(unsigned requested);

/// Run task(i) for i in [0, count) on a pool of `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task);

/// Sum `parts` with a balanced pairwise tree in index order.
template <class Acc>
Acc pairwise_sum(std::span<const Acc> parts) {
  if (parts.empty()) return Acc{};
  if (parts.size() == 1) return parts[0];
  const std::size_t half = parts.size() / 2;
  return pairwise_sum(parts.first(half)) + pairwise_sum(parts.subspan(half));
}

namespace detail {

struct ForwardPair {
  std::vector<double> zero;
  std::vector<double> top;
};

template <class Acc, class Leaf>
void visit_subtree(const HmmModel& model, std::vector<ForwardPair>& stack, std::vector<Symbol>& seq,
                   std::size_t depth, Acc& acc, Leaf& leaf) {
  const std::size_t n_total = seq.size();
  if (depth == n_total) {
    double l0 = 0.0, lt = 0.0;
    for (double v : stack[depth].zero) l0 += v;
    for (double v : stack[depth].top) lt += v;
    acc = acc + leaf(std::span<const Symbol>(seq), l0, lt);
    return;
  }
  const auto alphabet = static_cast<Symbol>(model.alphabet());
  for (Symbol s = 0; s < alphabet; ++s) {
    seq[depth] = s;
    forward_step(model, stack[depth].zero, s, stack[depth + 1].zero);
    forward_step(model, stack[depth].top, s, stack[depth + 1].top);
    visit_subtree(model, stack, seq, depth + 1, acc, leaf);
  }
}

}  // namespace detail

/// Visit every length-N symbol sequence in canonical (base-alphabet, first
/// readout most significant) order, calling leaf(seq, lambda_0, lambda_L) and
/// summing the returned Acc values.
///
/// The index space is split into alphabet^k prefix chunks, with k depending
/// only on (alphabet, N). Each chunk is summed sequentially in canonical
/// order and chunk totals are combined pairwise, so the result is bitwise
/// independent of the thread count. Acc must be default-constructible to
/// zero and provide operator+.
template <class Acc, class Leaf>
Acc reduce_sequences(const HmmModel& model, const EnumerationOptions& opts, Leaf leaf) {
  const std::size_t alphabet = model.alphabet();
  const int n = model.readouts();
  check_budget(alphabet, n, opts.max_sequences);

  int prefix = 0;
  std::uint64_t chunks = 1;
  while (prefix < n && chunks < 256) {
    chunks *= alphabet;
    ++prefix;
  }

  const std::size_t dim = model.transitions().dim();
  std::vector<Acc> partial(static_cast<std::size_t>(chunks));
  parallel_for(partial.size(), resolve_threads(opts.threads), [&](std::size_t chunk) {
    std::vector<detail::ForwardPair> stack(static_cast<std::size_t>(n) + 1,
                                           {std::vector<double>(dim), std::vector<double>(dim)});
    stack[0].zero[0] = 1.0;
    stack[0].top[dim - 1] = 1.0;
    const auto head = OutcomeSequence::from_index(chunk, alphabet, prefix);
    std::vector<Symbol> seq(head.symbols().begin(), head.symbols().end());
    seq.resize(static_cast<std::size_t>(n));
    for (int d = 0; d < prefix; ++d) {
      const auto du = static_cast<std::size_t>(d);
      forward_step(model, stack[du].zero, seq[du], stack[du + 1].zero);
      forward_step(model, stack[du].top, seq[du], stack[du + 1].top);
    }
    Acc acc{};
    Leaf local = leaf;
    detail::visit_subtree(model, stack, seq, static_cast<std::size_t>(prefix), acc, local);
    partial[chunk] = acc;
  });
  return pairwise_sum(std::span<const Acc>(partial));
}

}  // namespace readout
