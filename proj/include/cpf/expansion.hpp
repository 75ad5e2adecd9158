#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cpf/circuit.hpp"
#include "cpf/errors.hpp"
#include "cpf/series.hpp"

namespace cpf {

enum class ReorderStrategy { none, delayed_branching, early_pruning };

struct ExpansionOptions {
  /// Discard nodes whose observable X-vector is outside the GF(2) span of
  /// the remaining generators' X-vectors.
  bool prune_by_expectation = true;
  /// Keep only Fourier levels <= max_level.
  std::optional<int> max_level;
  /// Dynamic stopping: raise the level cap until the residual bound drops
  /// to this value. Must lie in (0, 1].
  std::optional<double> target_residual;
  ReorderStrategy reorder = ReorderStrategy::none;
  /// Abort with GuardExceeded once this many root-to-leaf paths were
  /// processed.
  std::optional<std::uint64_t> node_budget;
  /// 1 selects the serial reference engine; 0 uses the OpenMP default.
  int threads = 0;
};

struct ExpansionReport {
  std::uint32_t n_params = 0;
  /// Dressed-Hamiltonian terms per level (summed over observable terms).
  std::vector<std::uint64_t> n;
  /// Non-zero loss-function terms per level.
  std::vector<std::uint64_t> l;
  std::vector<double> delta;        // 2^{-m} n(m)
  std::vector<double> Delta_cum;    // prefix sums of delta
  std::vector<double> nu;           // 2^{-m} l(m)
  /// Terminal root-to-leaf paths processed: depth-0 leaves plus dead ends
  /// where every continuation was pruned or cut.
  std::uint64_t nodes_visited = 0;
  /// Candidate nodes discarded by the span test.
  std::uint64_t nodes_pruned = 0;
  double residual_bound = 0.0;
  /// False when pruning was active and n(m) is only a lower bound.
  bool n_is_exact = true;
  int level_cap = -1;  // -1: no truncation
  double wall_time_s = 0.0;

  void finalize_derived();
};

/// A vertex of the expansion tree, exposed for stepwise inspection.
struct ComputationalNode {
  PauliOperator observable;
  MonomialKey key;
  int depth;  // generators 1..depth still unprocessed
  int level;  // number of branch events taken == key.degree()
};

/// One application of the recursion rule to generator P_{node.depth}: a
/// commuting generator is dropped; an anti-commuting one branches into the
/// cos child (same observable) and the sin child (i * P * O), both one
/// Fourier level deeper.
std::vector<ComputationalNode> conjugate_step(const ComputationalNode& node,
                                              const PauliOperator& generator);

/// Per-prefix GF(2) spans of the generators' X-vectors; at(i) spans
/// generators 1..i. Immutable, safe to share across worker threads.
class PrefixSpans {
 public:
  explicit PrefixSpans(const PauliCircuit& c);
  const Gf2Basis& at(std::size_t i) const { return spans_[i]; }

 private:
  std::vector<Gf2Basis> spans_;
};

/// Recursive expansion of the dressed Hamiltonian: returns the Fourier
/// series of the loss function (restricted to levels <= max_level when set)
/// together with per-level statistics. Multi-term observables are expanded
/// term by term and merged by linearity. Output is deterministic and
/// independent of the thread schedule.
std::pair<FourierSeries, ExpansionReport> expand(const PauliCircuit& circuit,
                                                 const Observable& h,
                                                 const ExpansionOptions& opts = {});

/// Closed form of the parameter-averaged loss: sum of coeff * <0|P|0> over
/// terms whose Pauli commutes with every generator.
double average_loss(const PauliCircuit& circuit, const Observable& h);

struct ReorderResult {
  PauliCircuit circuit;
  /// original_labels[k] = 1-based parameter index, in the input circuit, of
  /// the generator now at position k.
  std::vector<std::uint32_t> original_labels;
};

/// Greedy reordering by adjacent transpositions of commuting generator
/// pairs; the result represents the same unitary and the same loss.
ReorderResult reorder_tracked(const PauliCircuit& circuit, const Observable& h,
                              ReorderStrategy strategy);
PauliCircuit reorder(const PauliCircuit& circuit, const Observable& h, ReorderStrategy strategy);

/// Importance-weighted random root-to-leaf walks estimating nodes_visited of
/// expand() under the same options: a walk's weight doubles at every
/// two-admissible-branch split and is unchanged elsewhere.
double mc_estimate(const PauliCircuit& circuit, const Observable& h,
                   const ExpansionOptions& opts, std::uint64_t samples, std::uint64_t seed);

}  // namespace cpf
