#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hilbmod/report.hpp"
#include "hilbmod/schatten.hpp"

namespace hilbmod {

struct ExperimentOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  std::uint64_t seed = 1;
  ConvergenceThresholds thresholds;
  FitWindow fitWindow;
};

/// {8, 12, 16, 20, 28, 40} for m <= 2, {6, 9, 12, 16, 20} otherwise.
std::vector<int> default_degree_sweep(int m);

/// Weighted shifts S_n with weight sqrt(k/n) on e_k (k <= n), 1 beyond:
/// ||[S_n^*, S_n]||_p against n^((1-p)/p) and against n^(1-p), and the
/// restriction to V_n = span{e_n, e_{n+1}, ...}. Requires N > max(n) + 5.
ExperimentReport run_example3(const std::vector<int>& nValues, const std::vector<double>& pValues, int N,
                              const ExperimentOptions& opts = {});

/// Partial direct sums S_1 (+) ... (+) S_B for B = 1..maxBlocks, full and
/// restricted to V = (+) V_n. Requires maxBlocks >= 8.
ExperimentReport run_counterexample_direct_sum(int maxBlocks, const std::vector<double>& pValues,
                                               const ExperimentOptions& opts = {});

/// Factorial-delta weights: trace norms of all [Z_i^*, Z_j] and Hilbert-Schmidt
/// norms of the Z_i across the degree sweep. Requires m >= 2.
ExperimentReport run_example5(int m, const std::vector<double>& deltas, const std::vector<int>& degrees,
                              const ExperimentOptions& opts = {});

struct ProbeSpec {
  std::string family = "drury-arveson";
  int m = 2;
  int k = 1;
  double delta = 1.0;
  std::vector<std::string> generators;
  std::vector<double> pValues{3.0};
  std::vector<int> degrees;  // empty: default sweep
};

/// Submodule generated by homogeneous or monomial generators: S_p norms of
/// [Y_i^*, Y_j] for the restrictions Y_i = Z_i|_S and of the compressions
/// to the complement, with verdicts and decay fits.
ExperimentReport run_arveson_probe(const ProbeSpec& spec, const ExperimentOptions& opts = {});

struct BergerShawSpec {
  std::string family = "bergman-ball";
  int m = 1;
  double delta = 1.0;
  /// Either points (V = span of the first c kernel vectors, c = 1..count)...
  std::vector<std::vector<Scalar>> points;
  /// ...or generators of S (V_N = complement of S within degree <= N).
  std::vector<std::string> generators;
  std::vector<int> degrees;
};

/// Spectral split [(T|V)^*, T|V] = P + C for T = Z_i^* and combinations,
/// tabulating (Tr P, ||C||_1) and checking 0 <= Tr P <= ||C||_1 + 1e-8 per row.
ExperimentReport run_berger_shaw_check(const BergerShawSpec& spec, const ExperimentOptions& opts = {});

inline constexpr double kBergerShawTolerance = 1e-8;

struct QuotientProbeSpec {
  std::string family = "bergman-ball";
  int m = 2;
  double delta = 1.0;
  std::vector<std::string> generators;
  std::vector<double> pValues{1.0, 2.0};
  std::vector<int> degrees;
  std::optional<double> zeroSetDimension;
};

/// Compressions of the Z_i to the complement of the submodule: cross-commutator
/// norms, singular-value decay and the fitted critical exponent.
ExperimentReport run_quotient_smoothness_probe(const QuotientProbeSpec& spec, const ExperimentOptions& opts = {});

inline constexpr double kLemma1Tolerance = 1e-10;

/// Random weights and monomial submodules: residual of
/// [(T|V)^*, T|V] = Q[T^*,T]Q + QTQ^perp T^*Q on V.
ExperimentReport run_lemma1_check(int trials, const ExperimentOptions& opts = {});

}  // namespace hilbmod
