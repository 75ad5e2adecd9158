#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "cpf/pauli.hpp"

namespace cpf {

/// Real linear combination of Pauli strings. Terms with identical bit
/// vectors are merged on construction, the stored Pauli sign is folded into
/// the coefficient, and vanishing terms are dropped.
class Observable {
 public:
  struct Term {
    double coeff;
    PauliOperator pauli;  // sign normalized to +1
  };

  explicit Observable(std::uint32_t n_qubits) : n_qubits_(n_qubits) {}
  Observable(std::uint32_t n_qubits, std::vector<Term> terms);

  static Observable single(const PauliOperator& p, double coeff = 1.0);

  std::uint32_t n_qubits() const { return n_qubits_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

 private:
  std::uint32_t n_qubits_;
  std::vector<Term> terms_;
};

/// Circuit in Pauli form: an ordered list of rotation generators, index 0
/// applied first. Identity generators are dropped at construction.
class PauliCircuit {
 public:
  explicit PauliCircuit(std::uint32_t n_qubits) : n_qubits_(n_qubits) {}
  PauliCircuit(std::uint32_t n_qubits, std::vector<PauliOperator> generators);

  std::uint32_t n_qubits() const { return n_qubits_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(generators_.size()); }
  const std::vector<PauliOperator>& generators() const { return generators_; }
  const PauliOperator& generator(std::uint32_t i) const { return generators_[i]; }

 private:
  std::uint32_t n_qubits_;
  std::vector<PauliOperator> generators_;
};

/// Clifford unitary represented by its conjugation tableau: the images
/// C† Z_q C and C† X_q C for every qubit q.
class CliffordOp {
 public:
  static CliffordOp identity(std::uint32_t n);
  static CliffordOp hadamard(std::uint32_t n, std::uint32_t q);
  static CliffordOp s_gate(std::uint32_t n, std::uint32_t q);
  static CliffordOp cnot(std::uint32_t n, std::uint32_t control, std::uint32_t target);
  static CliffordOp cz(std::uint32_t n, std::uint32_t a, std::uint32_t b);

  std::uint32_t n_qubits() const { return static_cast<std::uint32_t>(z_images_.size()); }
  const PauliOperator& z_image(std::uint32_t q) const { return z_images_[q]; }
  const PauliOperator& x_image(std::uint32_t q) const { return x_images_[q]; }

  /// C† p C, computed from the symplectic decomposition of p.
  PauliOperator conjugate(const PauliOperator& p) const;
  Observable conjugate(const Observable& h) const;

  /// Checks that the tableau preserves all commutation relations.
  bool is_symplectic() const;

 private:
  CliffordOp() = default;
  friend CliffordOp compose(const CliffordOp&, const CliffordOp&);
  std::vector<PauliOperator> z_images_;
  std::vector<PauliOperator> x_images_;
};

/// Tableau of (applied_second . applied_first).
CliffordOp compose(const CliffordOp& applied_first, const CliffordOp& applied_second);

/// Alternating sequence of Clifford gates and Pauli rotation generators,
/// listed in application order.
struct MixedCircuit {
  std::uint32_t n_qubits = 0;
  std::vector<std::variant<CliffordOp, PauliOperator>> ops;

  void push(CliffordOp c) { ops.emplace_back(std::move(c)); }
  void push(PauliOperator p) { ops.emplace_back(std::move(p)); }
};

/// Drags all Clifford gates to the end of the circuit: every rotation
/// generator is conjugated by the Cliffords applied before it, and the
/// accumulated Clifford C is returned so callers can absorb it into the
/// observable as H -> C† H C.
std::pair<PauliCircuit, CliffordOp> canonicalize(const MixedCircuit& mc);
std::pair<PauliCircuit, Observable> canonicalize(const MixedCircuit& mc, const Observable& h);

// ---------------------------------------------------------------------------
// Parameterized circuit builders.
// ---------------------------------------------------------------------------

/// m generators with every qubit letter uniform over {X, Y, Z}, plus one
/// random full-support Pauli observable.
std::pair<PauliCircuit, Observable> build_random_nonlocal(int n, int m, std::uint64_t seed);

/// m generators, each supported on `weight` distinct uniformly chosen qubits
/// with non-identity letters there.
PauliCircuit build_random_local(int n, int m, int weight, std::uint64_t seed);

/// Uniform full-support Pauli string, the observable model of the random
/// circuit experiments.
PauliOperator random_full_support_pauli(int n, std::uint64_t seed);

/// Uniform Pauli string supported on `weight` distinct random qubits.
PauliOperator random_weight_pauli(int n, int weight, std::uint64_t seed);

using Edge = std::pair<int, int>;

/// Simple d-regular graph on n vertices via pairing-model sampling with full
/// resampling on loops or duplicate edges. Edges are normalized (u < v) and
/// sorted lexicographically.
std::vector<Edge> random_regular_graph(int n, int d, std::uint64_t seed);

/// One layer = a ZZ rotation per edge (lexicographic order) followed by an X
/// rotation per qubit; layers repeated p times, all parameters independent.
/// Returns the circuit and the edge observables Z_i Z_j in edge order.
std::pair<PauliCircuit, std::vector<PauliOperator>> build_qaoa(int n_qubits,
                                                               const std::vector<Edge>& edges,
                                                               int p);

/// Reverse light cone bound 2((d-1)^{p+1} - 1)/(d-2) for degree-d graphs;
/// d = 2 degenerates to the chain value 2(p+1).
long long light_cone_size(int d, int p);

/// Brick-wall circuit where each block is a CZ on a qubit pair followed by
/// Rx and Rz rotations on both qubits. Blocks are emitted layer by layer with
/// alternating offsets.
MixedCircuit hea_brickwall_mixed(int n, int layers);
MixedCircuit hea_brickwall_mixed_blocks(int n, int blocks);

/// Canonicalized brick-wall circuit: the CZ gates are absorbed, leaving
/// 4 * (number of blocks) rotation generators.
PauliCircuit build_hea_brickwall(int n, int layers);
PauliCircuit build_hea_brickwall_blocks(int n, int blocks);

int hea_block_count(int n, int layers);

}  // namespace cpf
