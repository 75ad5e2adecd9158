#include "cpf/expansion.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

#include "cpf/rng.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace cpf {

namespace {

int effective_threads(int requested) {
#if defined(_OPENMP)
  if (requested <= 0) return omp_get_max_threads();
  return requested;
#else
  (void)requested;
  return 1;
#endif
}

}  // namespace

void ExpansionReport::finalize_derived() {
  const std::size_t levels = n.size();
  delta.assign(levels, 0.0);
  Delta_cum.assign(levels, 0.0);
  nu.assign(levels, 0.0);
  double cum = 0.0;
  for (std::size_t m = 0; m < levels; ++m) {
    delta[m] = std::ldexp(static_cast<double>(n[m]), -static_cast<int>(m));
    cum += delta[m];
    Delta_cum[m] = cum;
    nu[m] = std::ldexp(static_cast<double>(l[m]), -static_cast<int>(m));
  }
}

std::vector<ComputationalNode> conjugate_step(const ComputationalNode& node,
                                              const PauliOperator& generator) {
  if (node.depth < 1) throw std::invalid_argument("node has no generators left");
  if (commutes(generator, node.observable)) {
    ComputationalNode next = node;
    next.depth -= 1;
    return {std::move(next)};
  }
  const auto param = static_cast<std::uint32_t>(node.depth);
  auto keyed = [&](Trig f) {
    MonomialKey k = node.key;
    auto it = std::lower_bound(
        k.factors.begin(), k.factors.end(), param,
        [](const auto& entry, std::uint32_t p) { return entry.first < p; });
    k.factors.insert(it, {param, f});
    return k;
  };
  ComputationalNode cos_child{node.observable, keyed(Trig::cos), node.depth - 1, node.level + 1};
  ComputationalNode sin_child{multiply(generator, node.observable), keyed(Trig::sin),
                              node.depth - 1, node.level + 1};
  return {std::move(cos_child), std::move(sin_child)};
}

PrefixSpans::PrefixSpans(const PauliCircuit& c) {
  Gf2Basis basis(c.n_qubits());
  spans_.reserve(c.size() + 1);
  spans_.push_back(basis);
  for (std::uint32_t i = 0; i < c.size(); ++i) {
    basis.insert(c.generator(i).x_bits());
    spans_.push_back(basis);
  }
}

namespace {

// ---------------------------------------------------------------------------
// Single-observable-term engine
// ---------------------------------------------------------------------------

struct KeyEntry {
  std::uint32_t label;  // original 1-based parameter index
  Trig factor;
};

struct EngineNode {
  PauliOperator obs;
  std::vector<KeyEntry> key;  // in traversal order; sorted at emission
  int depth;
};

struct TermTally {
  std::vector<std::uint64_t> n, l;
  std::uint64_t paths = 0;
  std::uint64_t pruned = 0;
  std::map<MonomialKey, double> terms;  // leaf sign contributions, all +-1

  explicit TermTally(std::uint32_t m) : n(m + 1, 0), l(m + 1, 0) {}

  void merge_from(TermTally&& o) {
    for (std::size_t i = 0; i < n.size(); ++i) {
      n[i] += o.n[i];
      l[i] += o.l[i];
    }
    paths += o.paths;
    pruned += o.pruned;
    terms.merge(o.terms);  // leaf keys are globally unique
  }
};

struct BudgetState {
  std::atomic<std::uint64_t> used{0};
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max();
  std::atomic<bool> exceeded{false};

  void count_path() {
    if (used.fetch_add(1, std::memory_order_relaxed) + 1 > limit) {
      exceeded.store(true, std::memory_order_relaxed);
    }
  }
};

class TermExpander {
 public:
  TermExpander(const PauliCircuit& circuit, const std::vector<std::uint32_t>& labels,
               const PrefixSpans* spans, int level_cap, BudgetState* budget)
      : circuit_(circuit), labels_(labels), spans_(spans), cap_(level_cap), budget_(budget) {}

  bool admissible(const PauliOperator& obs, int depth) const {
    return spans_ == nullptr || spans_->at(depth).in_span(obs.x_bits());
  }

  /// Runs the node to its first two-admissible-child split; terminal events
  /// are tallied. Returns true and the two children through `out` on splits.
  bool advance(EngineNode node, TermTally& t, EngineNode out[2]) const {
    for (;;) {
      if (node.depth == 0) {
        emit_leaf(node, t);
        return false;
      }
      const PauliOperator& gen = circuit_.generator(node.depth - 1);
      if (commutes(gen, node.obs)) {
        node.depth -= 1;
        if (!admissible(node.obs, node.depth)) {
          t.pruned += 1;
          end_path(t);
          return false;
        }
        continue;
      }
      const int child_level = static_cast<int>(node.key.size()) + 1;
      if (child_level > cap_) {
        end_path(t);  // truncation cut, both children exceed the cap
        return false;
      }
      PauliOperator sin_obs = multiply(gen, node.obs);
      const int child_depth = node.depth - 1;
      const bool cos_ok = admissible(node.obs, child_depth);
      const bool sin_ok = admissible(sin_obs, child_depth);
      const std::uint32_t label = labels_[node.depth - 1];
      if (cos_ok && sin_ok) {
        out[0] = node;
        out[0].depth = child_depth;
        out[0].key.push_back({label, Trig::cos});
        out[1] = EngineNode{std::move(sin_obs), std::move(node.key), child_depth};
        out[1].key.push_back({label, Trig::sin});
        return true;
      }
      if (cos_ok) {
        t.pruned += 1;
        node.depth = child_depth;
        node.key.push_back({label, Trig::cos});
        continue;
      }
      if (sin_ok) {
        t.pruned += 1;
        node.obs = std::move(sin_obs);
        node.depth = child_depth;
        node.key.push_back({label, Trig::sin});
        continue;
      }
      t.pruned += 2;
      end_path(t);
      return false;
    }
  }

  /// Depth-first expansion of the subtree rooted at `node`.
  void run(EngineNode node, TermTally& t) const {
    std::vector<EngineNode> stack;
    stack.push_back(std::move(node));
    EngineNode children[2];
    while (!stack.empty()) {
      if (budget_->exceeded.load(std::memory_order_relaxed)) return;
      EngineNode cur = std::move(stack.back());
      stack.pop_back();
      while (advance(std::move(cur), t, children)) {
        stack.push_back(std::move(children[1]));
        cur = std::move(children[0]);
      }
    }
  }

 private:
  void end_path(TermTally& t) const {
    t.paths += 1;
    budget_->count_path();
  }

  void emit_leaf(const EngineNode& node, TermTally& t) const {
    const std::size_t level = node.key.size();
    t.n[level] += 1;
    if (node.obs.x_bits().none()) {
      t.l[level] += 1;
      MonomialKey key;
      key.factors.reserve(level);
      for (const auto& e : node.key) key.factors.emplace_back(e.label, e.factor);
      std::sort(key.factors.begin(), key.factors.end());
      t.terms.emplace(std::move(key), static_cast<double>(node.obs.sign()));
    }
    end_path(t);
  }

  const PauliCircuit& circuit_;
  const std::vector<std::uint32_t>& labels_;
  const PrefixSpans* spans_;
  int cap_;
  BudgetState* budget_;
};

TermTally expand_term(const PauliCircuit& circuit, const std::vector<std::uint32_t>& labels,
                      const PauliOperator& root, const PrefixSpans* spans, int level_cap,
                      BudgetState* budget, int threads) {
  const std::uint32_t m = circuit.size();
  TermTally tally(m);
  const TermExpander expander(circuit, labels, spans, level_cap, budget);

  EngineNode root_node{root, {}, static_cast<int>(m)};
  if (!expander.admissible(root_node.obs, root_node.depth)) {
    tally.pruned += 1;
    tally.paths += 1;
    budget->count_path();
    return tally;
  }

  if (threads <= 1) {
    expander.run(std::move(root_node), tally);
    return tally;
  }

  // Grow a frontier of independent subtrees, then farm them out. Terminal
  // events met while growing are tallied directly.
  const std::size_t target = static_cast<std::size_t>(threads) * 8;
  std::deque<EngineNode> frontier;
  frontier.push_back(std::move(root_node));
  EngineNode children[2];
  while (!frontier.empty() && frontier.size() < target) {
    EngineNode cur = std::move(frontier.front());
    frontier.pop_front();
    if (expander.advance(std::move(cur), tally, children)) {
      frontier.push_back(std::move(children[0]));
      frontier.push_back(std::move(children[1]));
    } else if (frontier.empty()) {
      return tally;  // tree exhausted while growing the frontier
    }
  }

  std::vector<EngineNode> slots(frontier.begin(), frontier.end());
  std::vector<TermTally> partial(slots.size(), TermTally(m));
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
  for (std::size_t i = 0; i < slots.size(); ++i) {
    expander.run(std::move(slots[i]), partial[i]);
  }
  for (auto& p : partial) tally.merge_from(std::move(p));
  return tally;
}

struct TermRun {
  TermTally tally;
  double Delta_at_cap = 0.0;  // sum over m <= cap of 2^{-m} n(m)
};

double combined_residual_bound(const std::vector<double>& coeffs,
                               const std::vector<double>& Delta) {
  double b = 0.0;
  for (std::size_t t = 0; t < coeffs.size(); ++t) {
    b += std::abs(coeffs[t]) * std::sqrt(std::max(0.0, 1.0 - Delta[t]));
  }
  return b * b;
}

}  // namespace

std::pair<FourierSeries, ExpansionReport> expand(const PauliCircuit& circuit,
                                                 const Observable& h,
                                                 const ExpansionOptions& opts) {
  if (h.n_qubits() != circuit.n_qubits()) {
    throw std::invalid_argument("observable qubit count mismatch");
  }
  if (opts.max_level && *opts.max_level < 0) {
    throw std::invalid_argument("max_level must be non-negative");
  }
  if (opts.target_residual && !(*opts.target_residual > 0.0 && *opts.target_residual <= 1.0)) {
    throw std::invalid_argument("target_residual must lie in (0, 1]");
  }
  const auto t0 = std::chrono::steady_clock::now();

  ReorderResult ordered = reorder_tracked(circuit, h, opts.reorder);
  const PauliCircuit& circ = ordered.circuit;
  const std::uint32_t m = circ.size();
  const int threads = effective_threads(opts.threads);
  const int hard_cap = opts.max_level ? std::min<int>(*opts.max_level, m) : static_cast<int>(m);

  std::optional<PrefixSpans> spans;
  if (opts.prune_by_expectation) spans.emplace(circ);
  PrefixSpans* span_ptr = spans ? &*spans : nullptr;

  BudgetState budget;
  if (opts.node_budget) budget.limit = *opts.node_budget;

  std::vector<double> coeffs;
  for (const auto& term : h.terms()) coeffs.push_back(term.coeff);

  const auto run_all = [&](const PrefixSpans* sp, int cap) {
    std::vector<TermRun> runs;
    runs.reserve(h.terms().size());
    for (const auto& term : h.terms()) {
      TermRun r{expand_term(circ, ordered.original_labels, term.pauli, sp, cap, &budget, threads),
                0.0};
      if (budget.exceeded.load()) {
        throw GuardExceeded("expansion exceeded the node budget of " +
                            std::to_string(budget.limit));
      }
      for (int lev = 0; lev <= cap && lev <= static_cast<int>(m); ++lev) {
        r.Delta_at_cap += std::ldexp(static_cast<double>(r.tally.n[lev]), -lev);
      }
      runs.push_back(std::move(r));
    }
    return runs;
  };

  int cap = hard_cap;
  std::vector<TermRun> main_runs;
  std::vector<double> exact_Delta;
  std::vector<std::uint64_t> exact_n;
  bool have_exact_n = !opts.prune_by_expectation;

  if (opts.target_residual) {
    // Raise the level cap until the bound 1 - Delta(cap) (combined over
    // observable terms) reaches the target. Delta needs exact n(m), so when
    // pruning is on, a cheap unpruned capped pass supplies it: a cap-c tree
    // has at most sum_{k<=c+1} binom(M,k) paths.
    for (cap = 0; ; ++cap) {
      auto aux = run_all(nullptr, cap);
      std::vector<double> Delta;
      exact_n.assign(m + 1, 0);
      for (const auto& r : aux) {
        Delta.push_back(r.Delta_at_cap);
        for (std::size_t lev = 0; lev < exact_n.size(); ++lev) exact_n[lev] += r.tally.n[lev];
      }
      const double bound = combined_residual_bound(coeffs, Delta);
      if (bound <= *opts.target_residual || cap >= hard_cap) {
        exact_Delta = std::move(Delta);
        if (!opts.prune_by_expectation) {
          main_runs = std::move(aux);
        }
        break;
      }
    }
    have_exact_n = true;
  }

  if (main_runs.empty()) {
    main_runs = run_all(span_ptr, cap);
  }

  FourierSeries series(m);
  ExpansionReport report;
  report.n_params = m;
  report.n.assign(m + 1, 0);
  report.l.assign(m + 1, 0);
  report.level_cap = cap < static_cast<int>(m) ? cap : -1;
  report.n_is_exact = have_exact_n;

  std::vector<double> Delta;
  for (std::size_t t = 0; t < main_runs.size(); ++t) {
    auto& run = main_runs[t];
    for (std::size_t lev = 0; lev < report.n.size(); ++lev) {
      report.n[lev] += run.tally.n[lev];
      report.l[lev] += run.tally.l[lev];
    }
    report.nodes_visited += run.tally.paths;
    report.nodes_pruned += run.tally.pruned;
    Delta.push_back(run.Delta_at_cap);
    for (const auto& [key, sign] : run.tally.terms) {
      series.add(key, coeffs[t] * sign);
    }
  }
  if (!exact_n.empty()) report.n = exact_n;
  if (!exact_Delta.empty()) Delta = exact_Delta;

  if (cap >= static_cast<int>(m)) {
    report.residual_bound = 0.0;  // complete expansion
  } else {
    report.residual_bound = combined_residual_bound(coeffs, Delta);
  }
  report.finalize_derived();
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(series), std::move(report)};
}

double average_loss(const PauliCircuit& circuit, const Observable& h) {
  if (h.n_qubits() != circuit.n_qubits()) {
    throw std::invalid_argument("observable qubit count mismatch");
  }
  double total = 0.0;
  for (const auto& term : h.terms()) {
    bool commutes_all = true;
    for (const auto& gen : circuit.generators()) {
      if (anti_commute(gen, term.pauli)) {
        commutes_all = false;
        break;
      }
    }
    if (commutes_all) total += term.coeff * expectation_in_zero(term.pauli);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Reordering (adjacent transpositions of commuting pairs only)
// ---------------------------------------------------------------------------

namespace {

/// Stable greedy bubble passes moving score-1 generators toward the
/// processed-first (high-index) end, across legal commuting swaps.
void bubble_right(std::vector<PauliOperator>& gens, std::vector<std::uint32_t>& labels,
                  std::vector<char>& score) {
  const std::size_t m = gens.size();
  const std::size_t max_passes = 2 * m;
  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    bool changed = false;
    for (std::size_t k = 0; k + 1 < m; ++k) {
      if (score[k] && !score[k + 1] && commutes(gens[k], gens[k + 1])) {
        std::swap(gens[k], gens[k + 1]);
        std::swap(labels[k], labels[k + 1]);
        std::swap(score[k], score[k + 1]);
        changed = true;
      }
    }
    if (!changed) return;
  }
}

}  // namespace

ReorderResult reorder_tracked(const PauliCircuit& circuit, const Observable& h,
                              ReorderStrategy strategy) {
  std::vector<std::uint32_t> labels(circuit.size());
  for (std::uint32_t k = 0; k < circuit.size(); ++k) labels[k] = k + 1;
  if (strategy == ReorderStrategy::none || circuit.size() < 2) {
    return {circuit, std::move(labels)};
  }
  std::vector<PauliOperator> gens = circuit.generators();
  std::vector<char> score(gens.size(), 0);

  if (strategy == ReorderStrategy::delayed_branching) {
    // Generators commuting with every observable term never branch while the
    // observable is untouched; processing them first delays branching.
    for (std::size_t k = 0; k < gens.size(); ++k) {
      bool all = true;
      for (const auto& term : h.terms()) {
        if (anti_commute(gens[k], term.pauli)) {
          all = false;
          break;
        }
      }
      score[k] = all ? 1 : 0;
    }
  } else {
    // Generators whose X-vector is independent of everyone else's span act
    // as pure filters; testing them early prunes half the nodes on average.
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Gf2Basis others(circuit.n_qubits());
      for (std::size_t j = 0; j < gens.size(); ++j) {
        if (j != k) others.insert(gens[j].x_bits());
      }
      score[k] = others.in_span(gens[k].x_bits()) ? 0 : 1;
    }
  }
  bubble_right(gens, labels, score);
  return {PauliCircuit(circuit.n_qubits(), std::move(gens)), std::move(labels)};
}

PauliCircuit reorder(const PauliCircuit& circuit, const Observable& h, ReorderStrategy strategy) {
  return reorder_tracked(circuit, h, strategy).circuit;
}

// ---------------------------------------------------------------------------
// Monte-Carlo path sampling
// ---------------------------------------------------------------------------

namespace {

double walk_weight(const PauliCircuit& circ, const PauliOperator& root, const PrefixSpans* spans,
                   int cap, Rng& rng) {
  const auto admissible = [&](const PauliOperator& obs, int depth) {
    return spans == nullptr || spans->at(depth).in_span(obs.x_bits());
  };
  PauliOperator obs = root;
  int depth = static_cast<int>(circ.size());
  int level = 0;
  double weight = 1.0;
  if (!admissible(obs, depth)) return weight;
  while (depth > 0) {
    const PauliOperator& gen = circ.generator(depth - 1);
    if (commutes(gen, obs)) {
      depth -= 1;
      if (!admissible(obs, depth)) break;
      continue;
    }
    if (level + 1 > cap) break;
    PauliOperator sin_obs = multiply(gen, obs);
    const bool cos_ok = admissible(obs, depth - 1);
    const bool sin_ok = admissible(sin_obs, depth - 1);
    if (!cos_ok && !sin_ok) break;
    if (cos_ok && sin_ok) {
      weight *= 2.0;
      if (rng.coin()) obs = std::move(sin_obs);
    } else if (sin_ok) {
      obs = std::move(sin_obs);
    }
    depth -= 1;
    level += 1;
  }
  return weight;
}

}  // namespace

double mc_estimate(const PauliCircuit& circuit, const Observable& h,
                   const ExpansionOptions& opts, std::uint64_t samples, std::uint64_t seed) {
  if (h.n_qubits() != circuit.n_qubits()) {
    throw std::invalid_argument("observable qubit count mismatch");
  }
  if (samples < 1) throw std::invalid_argument("samples must be positive");
  ReorderResult ordered = reorder_tracked(circuit, h, opts.reorder);
  const PauliCircuit& circ = ordered.circuit;
  std::optional<PrefixSpans> spans;
  if (opts.prune_by_expectation) spans.emplace(circ);
  const PrefixSpans* span_ptr = spans ? &*spans : nullptr;
  const int cap = opts.max_level ? std::min<int>(*opts.max_level, circ.size())
                                 : static_cast<int>(circ.size());
  const int threads = effective_threads(opts.threads);

  double total = 0.0;
  std::vector<double> weights(samples);
  for (std::size_t t = 0; t < h.terms().size(); ++t) {
    const PauliOperator& root = h.terms()[t].pauli;
    const std::uint64_t stream = Rng::mix(seed, t);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
    for (std::uint64_t i = 0; i < samples; ++i) {
      Rng rng(Rng::mix(stream, i));
      weights[i] = walk_weight(circ, root, span_ptr, cap, rng);
    }
    double sum = 0.0;
    for (double w : weights) sum += w;  // fixed order, schedule-independent
    total += sum / static_cast<double>(samples);
  }
  return total;
}

}  // namespace cpf
