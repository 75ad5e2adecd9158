#pragma once

#include <string>
#include <utility>

#include "cpf/circuit.hpp"
#include "cpf/expansion.hpp"
#include "cpf/mq.hpp"
#include "cpf/series.hpp"
#include "cpf/stats.hpp"

namespace cpf::io {

/// Circuit file: {"n_qubits": N, "generators": [{"sign": +-1, "pauli": "XIZ"}],
///                "hamiltonian": [{"coeff": c, "pauli": "ZZ"}]}.
std::string circuit_to_json(const PauliCircuit& circuit, const Observable& h);
std::pair<PauliCircuit, Observable> circuit_from_json(const std::string& text);

/// Series file: {"n_params": M, "terms": [{"factors": [[m, "cos"], ...],
///               "coeff": c}]} with terms in canonical key order.
std::string series_to_json(const FourierSeries& s);
FourierSeries series_from_json(const std::string& text);

std::string report_to_json(const ExpansionReport& r);

std::string solutions_to_json(const SolutionSet& sols, std::uint32_t m_vars);

std::string pauli_to_json(const PauliOperator& p);

/// LevelStats CSV with columns m, l, nu, cumulative.
std::string level_stats_to_csv(const LevelStats& stats);

/// Ensemble CSV with columns trial, m, n_m, l_m, nu_m, nodes, pruned,
/// estimate_flag; aggregate rows use trial = -1 (mean), -2 (std), -3 (theory
/// for the random non-local model).
std::string ensemble_to_csv(const EnsembleSpec& spec, const EnsembleResult& result);

std::string scaling_to_csv(const ScalingResult& result);
std::string complexity_to_csv(const ComplexitySummary& summary);

EnsembleSpec ensemble_spec_from_json(const std::string& text);

/// Edge-list file: one "u v" pair per line; '#' starts a comment.
std::vector<Edge> edges_from_text(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace cpf::io
