#include "cpf/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "cpf/rng.hpp"

namespace cpf {

namespace {
constexpr double kCoeffDropTol = 1e-12;
}

Observable::Observable(std::uint32_t n_qubits, std::vector<Term> terms) : n_qubits_(n_qubits) {
  std::map<std::pair<std::string, std::string>, double> merged;
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto& t : terms) {
    if (t.pauli.n_qubits() != n_qubits_) {
      throw std::invalid_argument("observable term qubit count mismatch");
    }
    if (!std::isfinite(t.coeff)) {
      throw std::invalid_argument("observable coefficient must be finite");
    }
    auto key = std::make_pair(t.pauli.z_bits().str(), t.pauli.x_bits().str());
    auto [it, fresh] = merged.emplace(key, 0.0);
    if (fresh) order.push_back(key);
    it->second += t.coeff * t.pauli.sign();
  }
  for (const auto& key : order) {
    const double c = merged[key];
    if (std::abs(c) < kCoeffDropTol) continue;
    terms_.push_back(Term{c, PauliOperator(BitVec::from_str(key.first),
                                           BitVec::from_str(key.second), +1)});
  }
}

Observable Observable::single(const PauliOperator& p, double coeff) {
  return Observable(p.n_qubits(), std::vector<Term>{Term{coeff, p}});
}

PauliCircuit::PauliCircuit(std::uint32_t n_qubits, std::vector<PauliOperator> generators)
    : n_qubits_(n_qubits) {
  generators_.reserve(generators.size());
  for (auto& g : generators) {
    if (g.n_qubits() != n_qubits_) {
      throw std::invalid_argument("generator qubit count mismatch");
    }
    if (g.is_identity()) continue;  // identity rotations are global phases
    generators_.push_back(std::move(g));
  }
}

// ---------------------------------------------------------------------------
// Clifford tableaus
// ---------------------------------------------------------------------------

CliffordOp CliffordOp::identity(std::uint32_t n) {
  CliffordOp c;
  c.z_images_.reserve(n);
  c.x_images_.reserve(n);
  for (std::uint32_t q = 0; q < n; ++q) {
    BitVec z(n), x(n);
    z.set(q, true);
    c.z_images_.emplace_back(z, BitVec(n), +1);
    x.set(q, true);
    c.x_images_.emplace_back(BitVec(n), x, +1);
  }
  return c;
}

CliffordOp CliffordOp::hadamard(std::uint32_t n, std::uint32_t q) {
  CliffordOp c = identity(n);
  std::swap(c.z_images_[q], c.x_images_[q]);  // Z <-> X
  return c;
}

CliffordOp CliffordOp::s_gate(std::uint32_t n, std::uint32_t q) {
  CliffordOp c = identity(n);
  BitVec zx(n);
  zx.set(q, true);
  // S† X S = -Y, S† Z S = Z.
  c.x_images_[q] = PauliOperator(zx, zx, -1);
  return c;
}

CliffordOp CliffordOp::cnot(std::uint32_t n, std::uint32_t control, std::uint32_t target) {
  if (control == target) throw std::invalid_argument("cnot control equals target");
  CliffordOp c = identity(n);
  // X_c -> X_c X_t, Z_t -> Z_c Z_t; the other two basis Paulis are fixed.
  BitVec x(n);
  x.set(control, true);
  x.set(target, true);
  c.x_images_[control] = PauliOperator(BitVec(n), x, +1);
  BitVec z(n);
  z.set(control, true);
  z.set(target, true);
  c.z_images_[target] = PauliOperator(z, BitVec(n), +1);
  return c;
}

CliffordOp CliffordOp::cz(std::uint32_t n, std::uint32_t a, std::uint32_t b) {
  if (a == b) throw std::invalid_argument("cz acts on two distinct qubits");
  CliffordOp c = identity(n);
  // X_a -> X_a Z_b, X_b -> Z_a X_b.
  BitVec za(n), xa(n), zb(n), xb(n);
  xa.set(a, true);
  za.set(b, true);
  c.x_images_[a] = PauliOperator(za, xa, +1);
  xb.set(b, true);
  zb.set(a, true);
  c.x_images_[b] = PauliOperator(zb, xb, +1);
  return c;
}

namespace {

/// Accumulator for products of Hermitian Paulis with full phase tracking:
/// represents i^phase * Z(z) X(x).
struct PhasedPauli {
  BitVec z, x;
  int phase;  // mod 4

  explicit PhasedPauli(std::uint32_t n) : z(n), x(n), phase(0) {}

  void multiply_right(const PauliOperator& p) {
    // i^e Z(z)X(x) * s (-i)^y Z(pz)X(px)
    //   = s i^{e - y + 2 |x & pz|} Z(z^pz) X(x^px)
    const int y = static_cast<int>(and_popcount(p.z_bits(), p.x_bits()) & 3u);
    phase += 4 - y + 2 * static_cast<int>(and_parity(x, p.z_bits()));
    if (p.sign() < 0) phase += 2;
    phase &= 3;
    z ^= p.z_bits();
    x ^= p.x_bits();
  }

  /// Converts back to the Hermitian storage form; the leftover i-power must
  /// be even.
  PauliOperator hermitian() const {
    const int y = static_cast<int>(and_popcount(z, x) & 3u);
    const int k = (phase + y) & 3;
    if (k & 1) throw std::logic_error("phase tracking produced a non-Hermitian Pauli");
    return PauliOperator(z, x, k == 0 ? +1 : -1);
  }
};

}  // namespace

PauliOperator CliffordOp::conjugate(const PauliOperator& p) const {
  if (p.n_qubits() != n_qubits()) {
    throw std::invalid_argument("qubit count mismatch");
  }
  // p = sign (-i)^y prod_q Z_q^{z_q} prod_q X_q^{x_q}; conjugation is a
  // homomorphism, so map each factor through the tableau in the same order.
  PhasedPauli acc(n_qubits());
  const int y = static_cast<int>(and_popcount(p.z_bits(), p.x_bits()) & 3u);
  acc.phase = (4 - y + (p.sign() < 0 ? 2 : 0)) & 3;
  for (std::uint32_t q = 0; q < n_qubits(); ++q) {
    if (p.z_bits().get(q)) acc.multiply_right(z_images_[q]);
  }
  for (std::uint32_t q = 0; q < n_qubits(); ++q) {
    if (p.x_bits().get(q)) acc.multiply_right(x_images_[q]);
  }
  return acc.hermitian();
}

Observable CliffordOp::conjugate(const Observable& h) const {
  std::vector<Observable::Term> terms;
  terms.reserve(h.terms().size());
  for (const auto& t : h.terms()) {
    terms.push_back(Observable::Term{t.coeff, conjugate(t.pauli)});
  }
  return Observable(h.n_qubits(), std::move(terms));
}

bool CliffordOp::is_symplectic() const {
  const std::uint32_t n = n_qubits();
  for (std::uint32_t a = 0; a < n; ++a) {
    if (commutes(z_images_[a], x_images_[a])) return false;
    for (std::uint32_t b = a + 1; b < n; ++b) {
      if (anti_commute(z_images_[a], z_images_[b])) return false;
      if (anti_commute(x_images_[a], x_images_[b])) return false;
      if (anti_commute(z_images_[a], x_images_[b])) return false;
      if (anti_commute(x_images_[a], z_images_[b])) return false;
    }
  }
  return true;
}

CliffordOp compose(const CliffordOp& applied_first, const CliffordOp& applied_second) {
  if (applied_first.n_qubits() != applied_second.n_qubits()) {
    throw std::invalid_argument("qubit count mismatch");
  }
  // (C2 C1)† P (C2 C1) = C1† (C2† P C2) C1
  CliffordOp out;
  const std::uint32_t n = applied_first.n_qubits();
  out.z_images_.reserve(n);
  out.x_images_.reserve(n);
  for (std::uint32_t q = 0; q < n; ++q) {
    out.z_images_.push_back(applied_first.conjugate(applied_second.z_image(q)));
    out.x_images_.push_back(applied_first.conjugate(applied_second.x_image(q)));
  }
  return out;
}

std::pair<PauliCircuit, CliffordOp> canonicalize(const MixedCircuit& mc) {
  CliffordOp acc = CliffordOp::identity(mc.n_qubits);
  std::vector<PauliOperator> generators;
  for (const auto& op : mc.ops) {
    if (std::holds_alternative<CliffordOp>(op)) {
      acc = compose(acc, std::get<CliffordOp>(op));
    } else {
      // Dragging the accumulated Clifford D past the rotation turns P(phi) D
      // into D P'(phi) with P' = D† P D.
      generators.push_back(acc.conjugate(std::get<PauliOperator>(op)));
    }
  }
  return {PauliCircuit(mc.n_qubits, std::move(generators)), std::move(acc)};
}

std::pair<PauliCircuit, Observable> canonicalize(const MixedCircuit& mc, const Observable& h) {
  if (h.n_qubits() != mc.n_qubits) {
    throw std::invalid_argument("observable qubit count mismatch");
  }
  auto [circ, acc] = canonicalize(mc);
  return {std::move(circ), acc.conjugate(h)};
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

PauliOperator random_full_support_pauli(int n, std::uint64_t seed) {
  Rng rng(seed);
  BitVec z(n), x(n);
  for (int q = 0; q < n; ++q) {
    switch (rng.bounded(3)) {
      case 0:
        x.set(q, true);
        break;  // X
      case 1:
        z.set(q, true);
        x.set(q, true);
        break;  // Y
      default:
        z.set(q, true);
        break;  // Z
    }
  }
  return PauliOperator(std::move(z), std::move(x), +1);
}

PauliOperator random_weight_pauli(int n, int weight, std::uint64_t seed) {
  if (weight < 1 || weight > n) {
    throw std::invalid_argument("weight out of range");
  }
  Rng rng(seed);
  // Partial Fisher-Yates draw of `weight` distinct qubits.
  std::vector<int> qubits(n);
  for (int i = 0; i < n; ++i) qubits[i] = i;
  BitVec z(n), x(n);
  for (int i = 0; i < weight; ++i) {
    const int j = i + static_cast<int>(rng.bounded(n - i));
    std::swap(qubits[i], qubits[j]);
    const int q = qubits[i];
    switch (rng.bounded(3)) {
      case 0:
        x.set(q, true);
        break;
      case 1:
        z.set(q, true);
        x.set(q, true);
        break;
      default:
        z.set(q, true);
        break;
    }
  }
  return PauliOperator(std::move(z), std::move(x), +1);
}

std::pair<PauliCircuit, Observable> build_random_nonlocal(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw std::invalid_argument("n and m must be positive");
  std::vector<PauliOperator> gens;
  gens.reserve(m);
  for (int i = 0; i < m; ++i) {
    gens.push_back(random_full_support_pauli(n, Rng::mix(seed, i)));
  }
  PauliOperator h = random_full_support_pauli(n, Rng::mix(seed, 0x0b5e77ab1eULL));
  return {PauliCircuit(n, std::move(gens)), Observable::single(h)};
}

PauliCircuit build_random_local(int n, int m, int weight, std::uint64_t seed) {
  if (n < 1 || m < 1) throw std::invalid_argument("n and m must be positive");
  std::vector<PauliOperator> gens;
  gens.reserve(m);
  for (int i = 0; i < m; ++i) {
    gens.push_back(random_weight_pauli(n, weight, Rng::mix(seed, i)));
  }
  return PauliCircuit(n, std::move(gens));
}

std::vector<Edge> random_regular_graph(int n, int d, std::uint64_t seed) {
  if (d < 1 || d >= n) throw std::invalid_argument("degree must satisfy 1 <= d < n");
  if ((static_cast<long long>(n) * d) % 2 != 0) {
    throw std::invalid_argument("n * d must be even");
  }
  Rng rng(seed);
  const int stubs = n * d;
  std::vector<int> points(stubs);
  constexpr int kMaxAttempts = 100000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    for (int i = 0; i < stubs; ++i) points[i] = i / d;
    // Fisher-Yates shuffle of the stub list.
    for (int i = stubs - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.bounded(i + 1));
      std::swap(points[i], points[j]);
    }
    std::set<Edge> edges;
    bool ok = true;
    for (int i = 0; i < stubs; i += 2) {
      int u = points[i], v = points[i + 1];
      if (u == v) {
        ok = false;
        break;
      }
      if (u > v) std::swap(u, v);
      if (!edges.emplace(u, v).second) {
        ok = false;
        break;
      }
    }
    if (ok) return {edges.begin(), edges.end()};
  }
  throw std::runtime_error("random_regular_graph: pairing model failed to converge");
}

std::pair<PauliCircuit, std::vector<PauliOperator>> build_qaoa(int n_qubits,
                                                               const std::vector<Edge>& edges,
                                                               int p) {
  if (p < 1) throw std::invalid_argument("QAOA needs at least one layer");
  if (n_qubits < 2) throw std::invalid_argument("QAOA needs at least two qubits");
  std::vector<Edge> sorted = edges;
  for (auto& [u, v] : sorted) {
    if (u == v) throw std::invalid_argument("self-loop in graph");
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= n_qubits) throw std::invalid_argument("edge endpoint out of range");
  }
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("duplicate edge in graph");
  }

  std::vector<PauliOperator> observables;
  observables.reserve(sorted.size());
  for (const auto& [u, v] : sorted) {
    BitVec z(n_qubits), x(n_qubits);
    z.set(u, true);
    z.set(v, true);
    observables.emplace_back(std::move(z), std::move(x), +1);
  }

  std::vector<PauliOperator> gens;
  gens.reserve(static_cast<std::size_t>(p) * (sorted.size() + n_qubits));
  for (int layer = 0; layer < p; ++layer) {
    for (const auto& zz : observables) gens.push_back(zz);
    for (int q = 0; q < n_qubits; ++q) {
      BitVec z(n_qubits), x(n_qubits);
      x.set(q, true);
      gens.emplace_back(std::move(z), std::move(x), +1);
    }
  }
  return {PauliCircuit(n_qubits, std::move(gens)), std::move(observables)};
}

long long light_cone_size(int d, int p) {
  if (d < 2 || p < 1) throw std::invalid_argument("light cone needs d >= 2, p >= 1");
  if (d == 2) return 2LL * (p + 1);  // chain: the cone grows one site per side per layer
  long long pw = 1;
  for (int i = 0; i < p + 1; ++i) pw *= (d - 1);
  return 2 * (pw - 1) / (d - 2);
}

int hea_block_count(int n, int layers) {
  int blocks = 0;
  for (int layer = 0; layer < layers; ++layer) {
    const int offset = layer % 2;
    blocks += (n - offset) / 2;
  }
  return blocks;
}

namespace {

MixedCircuit hea_mixed_impl(int n, int layers, int max_blocks) {
  if (n < 2) throw std::invalid_argument("brick-wall circuit needs n >= 2");
  MixedCircuit mc;
  mc.n_qubits = n;
  int emitted = 0;
  for (int layer = 0; max_blocks < 0 ? layer < layers : emitted < max_blocks; ++layer) {
    const int offset = layer % 2;
    for (int a = offset; a + 1 < n; a += 2) {
      if (max_blocks >= 0 && emitted == max_blocks) break;
      mc.push(CliffordOp::cz(n, a, a + 1));
      for (int q : {a, a + 1}) {
        BitVec xz(n), xx(n);
        xx.set(q, true);
        mc.push(PauliOperator(std::move(xz), std::move(xx), +1));  // Rx
        BitVec zz(n), zx(n);
        zz.set(q, true);
        mc.push(PauliOperator(std::move(zz), std::move(zx), +1));  // Rz
      }
      ++emitted;
    }
  }
  return mc;
}

}  // namespace

MixedCircuit hea_brickwall_mixed(int n, int layers) {
  if (layers < 1) throw std::invalid_argument("brick-wall circuit needs layers >= 1");
  return hea_mixed_impl(n, layers, -1);
}

MixedCircuit hea_brickwall_mixed_blocks(int n, int blocks) {
  if (blocks < 1) throw std::invalid_argument("brick-wall circuit needs blocks >= 1");
  return hea_mixed_impl(n, 0, blocks);
}

PauliCircuit build_hea_brickwall(int n, int layers) {
  return canonicalize(hea_brickwall_mixed(n, layers)).first;
}

PauliCircuit build_hea_brickwall_blocks(int n, int blocks) {
  return canonicalize(hea_brickwall_mixed_blocks(n, blocks)).first;
}

}  // namespace cpf
