#include "cpf/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cpf/rng.hpp"

namespace cpf {

namespace {

struct Instance {
  PauliCircuit circuit;
  Observable observable;
};

Instance build_trial(const EnsembleSpec& spec, std::uint64_t trial_seed) {
  switch (spec.kind) {
    case EnsembleKind::random_nonlocal: {
      auto [circ, obs] = build_random_nonlocal(spec.n, spec.m, trial_seed);
      return {std::move(circ), std::move(obs)};
    }
    case EnsembleKind::random_local: {
      PauliCircuit circ = build_random_local(spec.n, spec.m, spec.weight, trial_seed);
      PauliOperator h = random_full_support_pauli(spec.n, Rng::mix(trial_seed, 0x0b5eULL));
      return {std::move(circ), Observable::single(h)};
    }
    case EnsembleKind::qaoa: {
      auto edges = random_regular_graph(spec.n, spec.degree, trial_seed);
      auto [circ, terms] = build_qaoa(spec.n, edges, spec.p);
      Rng rng(Rng::mix(trial_seed, 0x0b5eULL));
      const auto& pick = terms[rng.bounded(terms.size())];
      return {std::move(circ), Observable::single(pick)};
    }
    case EnsembleKind::hea: {
      MixedCircuit mc = spec.blocks > 0 ? hea_brickwall_mixed_blocks(spec.n, spec.blocks)
                                        : hea_brickwall_mixed(spec.n, spec.layers);
      PauliOperator h = random_weight_pauli(spec.n, 2, Rng::mix(trial_seed, 0x0b5eULL));
      auto [circ, obs] = canonicalize(mc, Observable::single(h));
      return {std::move(circ), std::move(obs)};
    }
  }
  throw std::logic_error("unknown ensemble kind");
}

double sample_std(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

}  // namespace

EnsembleResult run_ensemble(const EnsembleSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("trials must be positive");
  EnsembleResult result;
  result.trials.resize(spec.trials);

  int levels = 0;
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (int t = 0; t < spec.trials; ++t) {
    const std::uint64_t trial_seed = Rng::mix(spec.seed, t);
    Instance inst = build_trial(spec, trial_seed);
    TrialSummary& summary = result.trials[t];

    ExpansionOptions opts = spec.expansion;
    opts.node_budget = spec.node_guard;
    try {
      auto [series, report] = expand(inst.circuit, inst.observable, opts);
      summary.n = report.n;
      summary.l = report.l;
      summary.nu = report.nu;
      summary.nodes_visited = report.nodes_visited;
      summary.nodes_pruned = report.nodes_pruned;
      summary.estimate = static_cast<double>(report.nodes_visited);
    } catch (const GuardExceeded&) {
      summary.estimated = true;
      summary.estimate = mc_estimate(inst.circuit, inst.observable, spec.expansion,
                                     spec.estimator_samples, Rng::mix(trial_seed, 0xe57ULL));
      summary.nodes_visited = static_cast<std::uint64_t>(summary.estimate);
    }
  }
  for (const auto& s : result.trials) {
    levels = std::max(levels, static_cast<int>(s.l.size()));
  }
  result.m_levels = levels > 0 ? levels - 1 : 0;

  // Per-level aggregation over trials with full expansions.
  std::vector<std::vector<double>> l_cols(levels), nu_cols(levels);
  std::vector<double> log10_nodes;
  for (const auto& s : result.trials) {
    log10_nodes.push_back(std::log10(std::max(1.0, s.estimate)));
    if (s.estimated) continue;
    for (int m = 0; m < levels; ++m) {
      l_cols[m].push_back(m < static_cast<int>(s.l.size()) ? static_cast<double>(s.l[m]) : 0.0);
      nu_cols[m].push_back(m < static_cast<int>(s.nu.size()) ? s.nu[m] : 0.0);
    }
  }
  result.l_mean.assign(levels, 0.0);
  result.l_std.assign(levels, 0.0);
  result.nu_mean.assign(levels, 0.0);
  result.nu_std.assign(levels, 0.0);
  for (int m = 0; m < levels; ++m) {
    if (l_cols[m].empty()) continue;
    double lm = 0.0, nm = 0.0;
    for (double v : l_cols[m]) lm += v;
    for (double v : nu_cols[m]) nm += v;
    lm /= static_cast<double>(l_cols[m].size());
    nm /= static_cast<double>(nu_cols[m].size());
    result.l_mean[m] = lm;
    result.nu_mean[m] = nm;
    result.l_std[m] = sample_std(l_cols[m], lm);
    result.nu_std[m] = sample_std(nu_cols[m], nm);
  }
  double lg = 0.0;
  for (double v : log10_nodes) lg += v;
  lg /= static_cast<double>(log10_nodes.size());
  result.log10_nodes_mean = lg;
  result.log10_nodes_std = sample_std(log10_nodes, lg);
  return result;
}

RandomCircuitTheory predicted_random_stats(int M, int N) {
  if (M < 0 || N < 0) throw std::invalid_argument("M and N must be non-negative");
  RandomCircuitTheory th;
  th.n_total = std::pow(1.5, M);
  th.l_total = std::ldexp(th.n_total, -N);
  th.n_m.resize(M + 1);
  th.l_m.resize(M + 1);
  th.nu_m.resize(M + 1);
  double binom = 1.0;  // binom(M, m), updated multiplicatively
  for (int m = 0; m <= M; ++m) {
    if (m > 0) binom = binom * (M - m + 1) / m;
    th.n_m[m] = std::ldexp(binom, m - M);
    th.l_m[m] = std::ldexp(th.n_m[m], -N);
    th.nu_m[m] = std::ldexp(binom, -N - M);
  }
  return th;
}

ScalingResult scaling_experiment(const std::vector<int>& n_list, int trials_per_n,
                                 std::uint64_t node_budget, std::uint64_t seed) {
  if (trials_per_n < 1) throw std::invalid_argument("trials_per_n must be positive");
  constexpr double kLog2ThreeHalves = 0.5849625007211562;  // log2(3/2)
  ScalingResult result;
  for (int n : n_list) {
    ScalingRow row;
    row.n = n;
    row.m = static_cast<int>(std::lround(n / kLog2ThreeHalves));
    std::vector<std::uint64_t> nodes(trials_per_n, 0), terms(trials_per_n, 0);
    std::vector<char> fell_back(trials_per_n, 0);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (int t = 0; t < trials_per_n; ++t) {
      const std::uint64_t trial_seed = Rng::mix(Rng::mix(seed, n), t);
      auto [circ, obs] = build_random_nonlocal(n, row.m, trial_seed);
      ExpansionOptions opts;
      opts.prune_by_expectation = true;
      opts.node_budget = node_budget;
      try {
        auto [series, report] = expand(circ, obs, opts);
        nodes[t] = report.nodes_visited;
        std::uint64_t lt = 0;
        for (auto v : report.l) lt += v;
        terms[t] = lt;
      } catch (const GuardExceeded&) {
        fell_back[t] = 1;
        nodes[t] = static_cast<std::uint64_t>(
            mc_estimate(circ, obs, opts, 5000, Rng::mix(trial_seed, 0xe57ULL)));
        terms[t] = 0;
      }
    }
    for (int t = 0; t < trials_per_n; ++t) {
      row.nodes += nodes[t];
      row.terms += terms[t];
      row.estimated = row.estimated || fell_back[t];
    }
    row.ratio = static_cast<double>(row.nodes) / static_cast<double>(std::max<std::uint64_t>(1, row.terms));
    result.rows.push_back(row);
  }
  // Least-squares slope of log2(ratio) against n.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double cnt = static_cast<double>(result.rows.size());
  for (const auto& row : result.rows) {
    const double x = row.n, y = std::log2(std::max(1.0, row.ratio));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  result.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return result;
}

ComplexitySummary qaoa_complexity_estimate(int d, int p, int graphs, std::uint64_t samples,
                                           std::uint64_t seed) {
  if (graphs < 1) throw std::invalid_argument("graphs must be positive");
  const long long nc = light_cone_size(d, p);
  if (nc > 4096) throw std::invalid_argument("light cone too large for this experiment");
  int n = static_cast<int>(nc);
  if ((static_cast<long long>(n) * d) % 2 != 0) n += 1;  // pairing model feasibility

  ComplexitySummary summary;
  summary.log10_estimates.resize(graphs);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (int g = 0; g < graphs; ++g) {
    const std::uint64_t graph_seed = Rng::mix(seed, g);
    auto edges = random_regular_graph(n, d, graph_seed);
    auto [circ, terms] = build_qaoa(n, edges, p);
    Rng rng(Rng::mix(graph_seed, 0x0b5eULL));
    const auto& pick = terms[rng.bounded(terms.size())];
    ExpansionOptions opts;  // pruning on
    const double est = mc_estimate(circ, Observable::single(pick), opts, samples,
                                   Rng::mix(graph_seed, 0xe57ULL));
    summary.log10_estimates[g] = std::log10(std::max(1.0, est));
  }
  double mean = 0.0;
  for (double v : summary.log10_estimates) mean += v;
  mean /= static_cast<double>(graphs);
  summary.mean_log10 = mean;
  summary.std_log10 = sample_std(summary.log10_estimates, mean);
  return summary;
}

}  // namespace cpf
