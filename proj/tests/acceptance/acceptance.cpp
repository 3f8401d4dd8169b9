// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "readout/approx.hpp"
#include "readout/classify.hpp"
#include "readout/encodings.hpp"
#include "readout/info.hpp"
#include "readout/rates.hpp"

using namespace readout;

namespace {

constexpr double kDelta = 0.02;
constexpr double kDecay = 0.01;
constexpr double kHeat = 0.005;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& why) {
    if (!ok) {
      pass = false;
      detail << " [" << why << "]";
    }
  }
};

int failures = 0;

void report(int id, const std::string& name, Verdict& v) {
  std::printf("criterion %d %s: %s%s\n", id, name.c_str(), v.pass ? "PASS" : "FAIL", v.detail.str().c_str());
  std::fflush(stdout);
  if (!v.pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void figure_three_order_of_magnitude() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  for (Strategy st : {Strategy{Majority{0}}, Strategy{MaximumLikelihood{}}}) {
    const FockReadout base{.delta = kDelta, .kd_tau = kDecay};
    FockReadout one = base, two = base;
    one.levels = 1;
    two.levels = 2;
    const auto b1 = optimal_over_N(one, st, 15);
    const auto b2 = optimal_over_N(two, st, 15);
    const double ratio = b1.report.infidelity() / b2.report.infidelity();
    v.detail << ' ' << strategy_name(st) << ": L=1 min " << g(b1.report.infidelity()) << " (N=" << b1.readouts
             << "), L=2 min " << g(b2.report.infidelity()) << " (N=" << b2.readouts << "), ratio " << g(ratio) << ';';
    v.require(ratio >= 10.0, std::string(strategy_name(st)) + " ratio below 10");
  }
  const double elapsed = seconds_since(t0);
  v.detail << " runtime " << g(elapsed) << " s";
  v.require(elapsed < 60.0, "runtime over 1 minute");
  report(1, "fig3 order-of-magnitude gain", v);
}

void figure_three_overlay() {
  Verdict v;
  double worst_final = 0.0;
  int points = 0;
  for (int L : {1, 2})
    for (int n = 1; n <= 15; n += 2) {
      double previous = INFINITY;
      for (double scale : {1.0, 2.0, 4.0, 8.0}) {
        const double d = kDelta / scale, k = kDecay / scale;
        const double exact = exact_infidelity(build_model({.levels = L, .readouts = n, .delta = d, .kd_tau = k}),
                                              Majority{0})
                                 .infidelity();
        const double approx = approx_decay_leading({.levels = L, .readouts = n, .delta = d, .kd_tau = k}).infidelity;
        const double gap = std::abs(approx / exact - 1.0);
        v.require(gap <= previous, "gap grew at L=" + std::to_string(L) + " N=" + std::to_string(n) +
                                       " scale " + g(scale));
        previous = gap;
      }
      worst_final = std::max(worst_final, previous);
      v.require(previous < 0.10, "final gap " + g(previous) + " at L=" + std::to_string(L) + " N=" + std::to_string(n));
      ++points;
    }
  v.detail << ' ' << points << " odd-N points, largest final |ratio-1| " << g(worst_final);
  report(2, "fig3 approximation overlay", v);
}

void figure_five_thresholds() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  const int expected[] = {0, 0, 0, 1};
  for (int L = 1; L <= 3; ++L) {
    int best_m = -1, best_n = 0;
    double best = INFINITY;
    for (int m = 0; m < L; ++m)
      for (int n = 1; n <= 15; ++n) {
        const double inf = exact_infidelity(build_model({.levels = L, .threshold = m, .readouts = n, .delta = kDelta,
                                                         .kd_tau = kDecay, .ku_tau = kHeat}),
                                            Majority{m})
                               .infidelity();
        if (inf < best) {
          best = inf;
          best_m = m;
          best_n = n;
        }
      }
    v.detail << " L=" << L << ": m=" << best_m << " N=" << best_n << " " << g(best) << ';';
    v.require(best_m == expected[L], "L=" + std::to_string(L) + " optimum at m=" + std::to_string(best_m));
  }
  const double elapsed = seconds_since(t0);
  v.detail << " runtime " << g(elapsed) << " s";
  v.require(elapsed < 300.0, "runtime over 5 minutes");
  report(3, "fig5 optimal thresholds", v);
}

void figure_six_multilevel() {
  Verdict v;
  double best_mle = INFINITY, best_majority = INFINITY, tightest = INFINITY;
  for (int n = 1; n <= 10; ++n) {
    const auto model = build_model({.levels = 3, .threshold = 1, .readouts = n, .delta = kDelta, .kd_tau = kDecay,
                                    .ku_tau = kHeat, .ancilla = Ancilla::multilevel});
    const double mle = exact_infidelity(model, MaximumLikelihood{}).infidelity();
    for (int m = 0; m < 3; ++m) best_majority = std::min(best_majority, exact_infidelity(model, Majority{m}).infidelity());
    const double bound = fano_infidelity_bound(model).infidelity;
    v.require(mle > bound, "bound reached at N=" + std::to_string(n));
    tightest = std::min(tightest, mle / bound);
    best_mle = std::min(best_mle, mle);
  }
  v.detail << " min MLE " << g(best_mle) << ", min majority " << g(best_majority) << ", smallest MLE/bound "
           << g(tightest);
  v.require(best_mle < best_majority, "MLE not below majority");
  report(4, "fig6 MLE vs majority and Fano bound", v);
}

void oracle_equivalences() {
  Verdict v;
  // (a) closed form against the matrix exponential
  double worst_a = 0.0;
  for (int L = 1; L <= 6; ++L)
    for (double kt : {1e-4, 1e-3, 0.01, 0.05, 0.1, 0.5, 1.0, 3.0}) {
      const auto t = transition_matrix(decay_generator(L, kt), 1.0);
      for (int i = 0; i <= L; ++i)
        for (int j = 0; j <= L; ++j)
          worst_a = std::max(worst_a, std::abs(t(i, j) - decay_transition_closed_form(i, j, kt)));
    }
  v.require(worst_a < 1e-10, "closed form deviation " + g(worst_a));

  // (b) forward recursion against the explicit hidden-path sum
  double worst_b = 0.0;
  int instances = 0;
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> rate(0.0, 0.1), noise(0.0, 0.3);
  for (int L = 1; L <= 6; ++L)
    for (Ancilla anc : {Ancilla::two_level, Ancilla::multilevel})
      for (int n = 1; std::pow(L + 1.0, n) <= 1e5; ++n) {
        const FockReadout p{.levels = L, .threshold = L / 2, .readouts = n, .delta = noise(gen), .kd_tau = rate(gen),
                            .ku_tau = 0.5 * rate(gen), .ancilla = anc};
        const auto model = build_model(p);
        std::uniform_int_distribution<int> sym(0, static_cast<int>(model.alphabet()) - 1);
        for (int sample = 0; sample < 4; ++sample) {
          std::vector<Symbol> seq(static_cast<std::size_t>(n));
          for (auto& s : seq) s = static_cast<Symbol>(sym(gen));
          for (int start : {0, L}) {
            const double fwd = likelihood(model, start, seq);
            const double brute = oracle::path_sum_likelihood(model, start, seq);
            if (brute != 0.0) worst_b = std::max(worst_b, std::abs(fwd - brute) / brute);
            else worst_b = std::max(worst_b, std::abs(fwd));
          }
        }
        ++instances;
      }
  v.require(worst_b < 1e-12, "forward deviation " + g(worst_b));

  // (c) Monte Carlo against exact enumeration on a 12-point grid
  double worst_c = 0.0;
  int comparisons = 0;
  for (int L = 1; L <= 3; ++L)
    for (int n : {1, 3, 5, 9}) {
      const auto model = build_model({.levels = L, .readouts = n, .delta = kDelta, .kd_tau = kDecay, .ku_tau = kHeat});
      for (Strategy st : {Strategy{Majority{0}}, Strategy{MaximumLikelihood{}}}) {
        const double exact = exact_infidelity(model, st).infidelity();
        const auto mc = monte_carlo_infidelity(model, st, {.trials = 1'000'000, .seed = 2024});
        const double z = std::abs(mc.infidelity() - exact) / *mc.stderr_total;
        worst_c = std::max(worst_c, z);
        v.require(z <= 5.0, "MC off by " + g(z) + " SE at L=" + std::to_string(L) + " N=" + std::to_string(n));
        ++comparisons;
      }
    }
  v.detail << " (a) max dev " << g(worst_a) << "; (b) " << instances << " instances, max rel dev " << g(worst_b)
           << "; (c) " << comparisons << " comparisons on 12 points, max " << g(worst_c) << " SE";
  report(5, "oracle equivalences", v);
}

void invariant_suites() {
  Verdict v;
  double row_dev = 0.0, semi_dev = 0.0;
  for (int L = 1; L <= 6; ++L)
    for (double kd : {0.0, 1e-3, 0.02, 0.3})
      for (double ku : {0.0, 5e-4, 0.01})
        for (double tau : {1e-3, 0.1, 1.0, 10.0}) {
          const auto k = combined_generator(L, kd, ku);
          const auto t = transition_matrix(k, tau);
          for (int i = 0; i <= L; ++i) {
            double s = 0.0;
            for (int j = 0; j <= L; ++j) s += t(i, j);
            row_dev = std::max(row_dev, std::abs(s - 1.0));
          }
          const auto t2 = transition_matrix(k, 2 * tau);
          const Matrix sq = t.entries() * t.entries();
          semi_dev = std::max(semi_dev, max_abs_diff(sq, t2.entries()));
        }
  v.require(row_dev <= 1e-12, "row sum deviation " + g(row_dev));
  v.require(semi_dev < 1e-10, "semigroup deviation " + g(semi_dev));

  double norm_dev = 0.0;
  for (int L = 1; L <= 3; ++L)
    for (Ancilla anc : {Ancilla::two_level, Ancilla::multilevel})
      for (int n : {1, 4, 7}) {
        const auto model = build_model({.levels = L, .threshold = 0, .readouts = n, .delta = 0.1, .kd_tau = 0.03,
                                        .ku_tau = 0.01, .ancilla = anc});
        for (int start : {0, L}) {
          double total = 0.0;
          for (const auto& seq : oracle::all_sequences(model.alphabet(), n)) total += likelihood(model, start, seq);
          norm_dev = std::max(norm_dev, std::abs(total - 1.0));
        }
      }
  v.require(norm_dev < 1e-10, "likelihood normalization " + g(norm_dev));

  int grid = 0, violations = 0;
  for (int L = 1; L <= 3; ++L)
    for (int m = 0; m < L; ++m)
      for (Ancilla anc : {Ancilla::two_level, Ancilla::multilevel})
        for (int n = 1; n <= (anc == Ancilla::multilevel ? 7 : 9); ++n)
          for (double d : {0.01, 0.05, 0.2})
            for (double kd : {0.0, 0.01, 0.05})
              for (double ku : {0.0, 0.005}) {
                const auto model = build_model(
                    {.levels = L, .threshold = m, .readouts = n, .delta = d, .kd_tau = kd, .ku_tau = ku, .ancilla = anc});
                const double mle = exact_infidelity(model, MaximumLikelihood{}).infidelity();
                const double maj = exact_infidelity(model, Majority{m}).infidelity();
                if (mle > maj + 1e-15) ++violations;
                ++grid;
              }
  v.require(violations == 0, std::to_string(violations) + " MLE > majority cases");

  const auto channel = channel_distributions(build_model({.levels = 2, .readouts = 5, .delta = kDelta, .kd_tau = kDecay}));
  const double hb = binary_entropy(channel.prior[0]);
  v.require(hb == 1.0 && prior_entropy() == 1.0, "H(B) = " + g(hb));

  double inv_dev = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const double p = 0.5 * k / 1000.0;
    inv_dev = std::max(inv_dev, std::abs(inverse_binary_entropy(binary_entropy(p)) - p));
  }
  v.require(inv_dev < 1e-10, "entropy round trip " + g(inv_dev));

  double cat_dev = 0.0;
  for (int L = 1; L <= 4; ++L)
    for (double alpha : {0.5, 1.0, 2.0, 3.0, 5.0}) {
      const int t = admissible_cat_truncation(alpha, 2 * L);
      std::vector<std::vector<double>> words;
      for (int r = 0; r < 2 * L; ++r) words.push_back(cat_fock_amplitudes(alpha, 2 * L, r, t));
      for (std::size_t a = 0; a < words.size(); ++a)
        for (std::size_t b = 0; b < words.size(); ++b) {
          double dot = 0.0;
          for (std::size_t k = 0; k < words[a].size(); ++k) dot += words[a][k] * words[b][k];
          cat_dev = std::max(cat_dev, std::abs(dot - (a == b ? 1.0 : 0.0)));
        }
    }
  v.require(cat_dev <= 1e-12, "cat orthonormality " + g(cat_dev));

  double binom_dev = 0.0;
  for (int L = 1; L <= 8; ++L)
    for (int M = 1; M <= 8; ++M)
      binom_dev = std::max(binom_dev, std::abs(binomial_mean_photon(L, M).average() - L * M / 2.0));
  v.require(binom_dev <= 1e-12, "binomial mean photon " + g(binom_dev));

  v.detail << " row sums " << g(row_dev) << ", semigroup " << g(semi_dev) << ", normalization " << g(norm_dev)
           << ", MLE<=majority on " << grid << " points, H(B)=" << g(hb) << ", inversion " << g(inv_dev) << ", cat "
           << g(cat_dev) << ", binomial " << g(binom_dev);
  report(6, "invariant suites", v);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void determinism(const std::string& cli) {
  Verdict v;
  if (cli.empty()) {
    v.require(false, "no --cli binary given");
    report(7, "determinism across thread counts", v);
    return;
  }
  const auto dir = std::filesystem::temp_directory_path();
  const auto one = dir / "readout_fig3_t1.csv";
  const auto eight = dir / "readout_fig3_t8.csv";
  std::filesystem::remove(one);
  std::filesystem::remove(eight);
  const auto run = [&](int threads, const std::filesystem::path& out) {
    const std::string cmd = "\"" + cli + "\" reproduce fig3 --seed 7 --threads " + std::to_string(threads) +
                            " --output \"" + out.string() + "\"";
    return std::system(cmd.c_str());
  };
  v.require(run(1, one) == 0, "threads 1 run failed");
  v.require(run(8, eight) == 0, "threads 8 run failed");
  const auto a = slurp(one), b = slurp(eight);
  v.require(!a.empty(), "empty output");
  v.require(a == b, "outputs differ");
  v.detail << ' ' << a.size() << " bytes, " << std::count(a.begin(), a.end(), '\n') << " lines";
  report(7, "determinism across thread counts", v);
}

void code_formulas() {
  Verdict v;
  struct Point {
    double got, want;
  };
  const Point points[] = {
      {approx_fidelity_cat(2, 3, 0.02, 0.01, std::sqrt(2.0)).fidelity(), 1.0 - 0.0024 - 0.0016},
      {approx_fidelity_cat(1, 3, 0.0, 0.01, 1.5).fidelity(), 0.91},
      {approx_fidelity_cat(3, 5, 0.01, 0.002, 2.0).fidelity(), 1.0 - 2e-5 - 0.024 * 0.024 * 0.024 / 3.0},
      {approx_fidelity_binomial(1, 2, 1, 0.0, 0.01).fidelity(), 0.98},
      {approx_fidelity_binomial(2, 2, 3, 0.02, 0.01).fidelity(), 0.996},
      {approx_fidelity_binomial(3, 4, 5, 0.01, 0.002).fidelity(), 1.0 - 2e-5 - 0.036 * 0.036 * 0.036 / 3.0},
  };
  double worst = 0.0;
  for (const auto& p : points) worst = std::max(worst, std::abs(p.got - p.want));
  v.require(worst <= 1e-14, "hand value deviation " + g(worst));

  double cat_final = 0.0;
  for (int L = 1; L <= 3; ++L)
    for (int r = 0; r < 2 * L; ++r) {
      double previous = INFINITY;
      for (double alpha : {3.0, 5.0, 8.0}) {
        const double gap = std::abs(cat_loss_moment(alpha, 2 * L, r, L, 0) / cat_loss_moment_approx(alpha, L) - 1.0);
        v.require(gap <= std::max(previous, 1e-12), "cat moment gap grew at L=" + std::to_string(L));
        previous = gap;
      }
      cat_final = std::max(cat_final, previous);
    }
  v.require(cat_final < 1e-9, "cat moment ratio not near 1");

  double binom_final = 0.0;
  for (int L = 1; L <= 3; ++L) {
    double previous = INFINITY;
    for (int M : {2, 4, 8, 16, 32}) {
      const double avg = 0.5 * (binomial_loss_moment(L, M, 0, L) + binomial_loss_moment(L, M, 1, L));
      const double gap = std::abs(avg / binomial_loss_moment_approx(L, M, L) - 1.0);
      v.require(gap <= previous + 1e-14, "binomial moment gap grew at L=" + std::to_string(L));
      previous = gap;
    }
    binom_final = std::max(binom_final, previous);
  }
  v.require(binom_final < 0.05, "binomial moment ratio not near 1");
  v.detail << " hand values within " << g(worst) << "; cat |ratio-1| at alpha=8 " << g(cat_final)
           << "; binomial |ratio-1| at M=32 " << g(binom_final);
  report(8, "cat and binomial formulas", v);
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
  figure_three_order_of_magnitude();
  figure_three_overlay();
  figure_five_thresholds();
  figure_six_multilevel();
  oracle_equivalences();
  invariant_suites();
  determinism(cli);
  code_formulas();
  std::printf("%s: %d of 8 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
