#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cpf/circuit.hpp"
#include "cpf/expansion.hpp"

namespace cpf {

enum class EnsembleKind { random_nonlocal, random_local, qaoa, hea };

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::random_nonlocal;
  int n = 8;        // qubits (random kinds, hea); graph size for qaoa
  int m = 14;       // generators (random kinds)
  int weight = 2;   // random_local support
  int degree = 3;   // qaoa graph degree
  int p = 1;        // qaoa layers
  int layers = 2;   // hea layers; blocks > 0 overrides
  int blocks = -1;
  int trials = 20;
  std::uint64_t seed = 1;
  ExpansionOptions expansion;
  std::uint64_t estimator_samples = 10000;
  /// Trials whose estimated path count exceeds this fall back to the
  /// Monte-Carlo estimate and carry the estimate flag.
  std::uint64_t node_guard = 10'000'000;
};

struct TrialSummary {
  std::vector<std::uint64_t> n, l;
  std::vector<double> nu;
  std::uint64_t nodes_visited = 0;
  std::uint64_t nodes_pruned = 0;
  bool estimated = false;  // fell back to mc_estimate
  double estimate = 0.0;   // path-count estimate (exact count when !estimated)
};

struct EnsembleResult {
  int m_levels = 0;  // arrays run over levels 0..m_levels
  std::vector<TrialSummary> trials;
  std::vector<double> l_mean, l_std, nu_mean, nu_std;
  double log10_nodes_mean = 0.0;
  double log10_nodes_std = 0.0;
};

EnsembleResult run_ensemble(const EnsembleSpec& spec);

/// Closed-form random-circuit predictions: n_M = (3/2)^M,
/// n_M(m) = 2^{m-M} binom(M, m), l_M(m) = 2^{-N} n_M(m),
/// nu_M(m) = 2^{-N-M} binom(M, m).
struct RandomCircuitTheory {
  double n_total = 0.0;
  double l_total = 0.0;
  std::vector<double> n_m, l_m, nu_m;
};

RandomCircuitTheory predicted_random_stats(int M, int N);

struct ScalingRow {
  int n = 0;
  int m = 0;
  std::uint64_t nodes = 0;  // pruned paths, summed over trials
  std::uint64_t terms = 0;  // non-zero loss terms, summed over trials
  double ratio = 0.0;       // nodes per term
  bool estimated = false;
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  double slope = 0.0;  // least-squares slope of log2(ratio) vs n
};

/// Random non-local circuits at depth M = round(n / log2(3/2)): pruned path
/// count per non-zero loss term, fitted against the qubit count.
ScalingResult scaling_experiment(const std::vector<int>& n_list, int trials_per_n,
                                 std::uint64_t node_budget, std::uint64_t seed);

struct ComplexitySummary {
  std::vector<double> log10_estimates;  // one per graph
  double mean_log10 = 0.0;
  double std_log10 = 0.0;
};

/// Monte-Carlo path-count estimates for QAOA circuits of the reverse-light-
/// cone size, one random d-regular graph and one random edge observable per
/// trial; aggregated as mean and deviation of log10.
ComplexitySummary qaoa_complexity_estimate(int d, int p, int graphs, std::uint64_t samples,
                                           std::uint64_t seed);

}  // namespace cpf
