#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cpf/circuit.hpp"
#include "cpf/series.hpp"

namespace cpf {

/// Boolean quadratic system over the branch vector k in F_2^M describing
/// which final observables P_1^{k_1} ... P_M^{k_M} H both appear in the
/// recursive expansion and have non-zero expectation in |0...0>.
struct MQSystem {
  std::uint32_t m_vars = 0;   // M
  std::uint32_t n_qubits = 0;
  /// anti[i].get(j) = <P_{i+1}, P_{j+1}>; symmetric with zero diagonal.
  std::vector<BitVec> anti;
  /// h_anti.get(i) = <P_{i+1}, H>.
  BitVec h_anti;
  /// x_rows[q].get(i) = X-bit q of P_{i+1}; the linear system
  /// sum_i k_i (P_i)_X = H_X.
  std::vector<BitVec> x_rows;
  BitVec h_x;
};

MQSystem build_system(const PauliCircuit& circuit, const PauliOperator& h);

/// Branch-consistency check: k_i = 1 requires P_i to anti-commute with
/// P_{i+1}^{k_{i+1}} ... P_M^{k_M} H.
bool satisfies_quadratic(const MQSystem& sys, const BitVec& k);
bool satisfies_linear(const MQSystem& sys, const BitVec& k);

struct SolutionSet {
  std::vector<BitVec> solutions;  // sorted lexicographically on k_1 k_2 ...
  bool overflow = false;          // true when truncated at the cap
};

/// All solutions by brute force over the affine solution space of the linear
/// X-constraints, filtered by the quadratic branch rules. Collection stops
/// at `cap` solutions with the overflow flag set.
SolutionSet enumerate_solutions(const MQSystem& sys, std::uint64_t cap);

/// k_i = 1 iff parameter i carries a sine factor in the key.
BitVec leaf_branch_vector(const MonomialKey& key, const PauliCircuit& circuit);

/// Plain-text ANF listing of the constraint system, for external MQ tools.
std::string to_anf_text(const MQSystem& sys);

}  // namespace cpf
