#include "cpf/mq.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "cpf/errors.hpp"

namespace cpf {

MQSystem build_system(const PauliCircuit& circuit, const PauliOperator& h) {
  if (h.n_qubits() != circuit.n_qubits()) {
    throw std::invalid_argument("observable qubit count mismatch");
  }
  const std::uint32_t m = circuit.size();
  const std::uint32_t n = circuit.n_qubits();
  MQSystem sys;
  sys.m_vars = m;
  sys.n_qubits = n;
  sys.anti.assign(m, BitVec(m));
  sys.h_anti = BitVec(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    for (std::uint32_t j = i + 1; j < m; ++j) {
      if (anti_commute(circuit.generator(i), circuit.generator(j))) {
        sys.anti[i].set(j, true);
        sys.anti[j].set(i, true);
      }
    }
    sys.h_anti.set(i, anti_commute(circuit.generator(i), h));
  }
  sys.x_rows.assign(n, BitVec(m));
  for (std::uint32_t i = 0; i < m; ++i) {
    const BitVec& x = circuit.generator(i).x_bits();
    for (std::uint32_t q = 0; q < n; ++q) {
      if (x.get(q)) sys.x_rows[q].set(i, true);
    }
  }
  sys.h_x = h.x_bits();
  return sys;
}

bool satisfies_linear(const MQSystem& sys, const BitVec& k) {
  for (std::uint32_t q = 0; q < sys.n_qubits; ++q) {
    if (and_parity(sys.x_rows[q], k) != sys.h_x.get(q)) return false;
  }
  return true;
}

namespace {

/// c_i = <P_i, P_{i+1}^{k_{i+1}} ... H> = <P_i, H> + sum_{j>i} k_j <P_i, P_j>.
BitVec suffix_anti(const MQSystem& sys, const BitVec& k) {
  BitVec c = sys.h_anti;
  for (std::uint32_t j = 0; j < sys.m_vars; ++j) {
    if (!k.get(j)) continue;
    for (std::uint32_t i = 0; i < j; ++i) {
      if (sys.anti[j].get(i)) c.flip(i);
    }
  }
  return c;
}

bool quadratic_ok(const BitVec& k, const BitVec& c) {
  // k_i = 1 requires c_i = 1, i.e. (k & ~c) == 0.
  const auto& wk = k.words();
  const auto& wc = c.words();
  for (std::size_t w = 0; w < wk.size(); ++w) {
    if (wk[w] & ~wc[w]) return false;
  }
  return true;
}

}  // namespace

bool satisfies_quadratic(const MQSystem& sys, const BitVec& k) {
  return quadratic_ok(k, suffix_anti(sys, k));
}

SolutionSet enumerate_solutions(const MQSystem& sys, std::uint64_t cap) {
  if (sys.m_vars > 30) {
    throw GuardExceeded("brute-force enumeration is limited to M <= 30");
  }
  const std::uint32_t m = sys.m_vars;
  SolutionSet out;

  // Solve the linear system first: Gaussian elimination on the N x M system
  // with the augmented column h_x.
  std::vector<BitVec> rows = sys.x_rows;
  std::vector<bool> rhs(sys.n_qubits);
  for (std::uint32_t q = 0; q < sys.n_qubits; ++q) rhs[q] = sys.h_x.get(q);

  std::vector<int> pivot_of_col(m, -1);
  std::uint32_t rank = 0;
  for (std::uint32_t col = 0; col < m && rank < rows.size(); ++col) {
    std::uint32_t sel = rank;
    while (sel < rows.size() && !rows[sel].get(col)) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    std::swap(rhs[rank], rhs[sel]);
    for (std::uint32_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r].get(col)) {
        rows[r] ^= rows[rank];
        rhs[r] = rhs[r] ^ rhs[rank];
      }
    }
    pivot_of_col[col] = static_cast<int>(rank);
    ++rank;
  }
  for (std::uint32_t r = rank; r < rows.size(); ++r) {
    if (rhs[r]) return out;  // inconsistent: H_X outside the generators' span
  }

  // Particular solution: free variables zero, pivots take the reduced rhs.
  BitVec k0(m);
  std::vector<std::uint32_t> free_cols;
  for (std::uint32_t col = 0; col < m; ++col) {
    if (pivot_of_col[col] >= 0) {
      k0.set(col, rhs[pivot_of_col[col]]);
    } else {
      free_cols.push_back(col);
    }
  }
  // Nullspace basis vector for each free column.
  std::vector<BitVec> null_basis;
  null_basis.reserve(free_cols.size());
  for (std::uint32_t f : free_cols) {
    BitVec v(m);
    v.set(f, true);
    for (std::uint32_t col = 0; col < m; ++col) {
      if (pivot_of_col[col] >= 0 && rows[pivot_of_col[col]].get(f)) v.set(col, true);
    }
    null_basis.push_back(std::move(v));
  }

  // Toggle masks for the suffix-anti-commutation vector: flipping the set
  // bits of null_basis[g] shifts c by a fixed XOR mask.
  std::vector<BitVec> c_masks;
  c_masks.reserve(null_basis.size());
  for (const BitVec& v : null_basis) {
    BitVec mask(m);
    for (std::uint32_t j = 0; j < m; ++j) {
      if (!v.get(j)) continue;
      for (std::uint32_t i = 0; i < j; ++i) {
        if (sys.anti[j].get(i)) mask.flip(i);
      }
    }
    c_masks.push_back(std::move(mask));
  }

  // Gray-code walk over the affine space: one basis toggle per candidate.
  BitVec k = k0;
  BitVec c = suffix_anti(sys, k);
  const std::uint64_t count = std::uint64_t{1} << null_basis.size();
  std::uint64_t gray_prev = 0;
  for (std::uint64_t idx = 0;; ++idx) {
    if (quadratic_ok(k, c)) {
      if (out.solutions.size() >= cap) {
        out.overflow = true;
        break;
      }
      out.solutions.push_back(k);
    }
    if (idx + 1 >= count) break;
    const std::uint64_t gray = (idx + 1) ^ ((idx + 1) >> 1);
    const int g = std::countr_zero(gray ^ gray_prev);
    gray_prev = gray;
    k ^= null_basis[g];
    c ^= c_masks[g];
  }
  std::sort(out.solutions.begin(), out.solutions.end(),
            [](const BitVec& a, const BitVec& b) { return lex_less(a, b); });
  return out;
}

BitVec leaf_branch_vector(const MonomialKey& key, const PauliCircuit& circuit) {
  BitVec k(circuit.size());
  for (const auto& [param, factor] : key.factors) {
    if (param < 1 || param > circuit.size()) {
      throw std::invalid_argument("key references a parameter outside this circuit");
    }
    if (factor == Trig::sin) k.set(param - 1, true);
  }
  return k;
}

std::string to_anf_text(const MQSystem& sys) {
  std::ostringstream text;
  text << "# Boolean MQ system in ANF, variables k1..k" << sys.m_vars << "\n";
  text << "# branch-consistency equations k_i*(1 + <P_i,H> + sum_{j>i} k_j*<P_i,P_j>) = 0\n";
  for (std::uint32_t i = 0; i < sys.m_vars; ++i) {
    // Expanded over GF(2) with k^2 = k: the k_i monomial survives only when
    // <P_i,H> = 0.
    bool first = true;
    if (!sys.h_anti.get(i)) {
      text << 'k' << (i + 1);
      first = false;
    }
    for (std::uint32_t j = i + 1; j < sys.m_vars; ++j) {
      if (sys.anti[i].get(j)) {
        if (!first) text << " + ";
        text << 'k' << (i + 1) << "*k" << (j + 1);
        first = false;
      }
    }
    if (first) text << '0';
    text << " = 0\n";
  }
  text << "# linear X-constraint rows (one per qubit)\n";
  for (std::uint32_t q = 0; q < sys.n_qubits; ++q) {
    bool first = true;
    for (std::uint32_t i = 0; i < sys.m_vars; ++i) {
      if (sys.x_rows[q].get(i)) {
        if (!first) text << " + ";
        text << 'k' << (i + 1);
        first = false;
      }
    }
    if (first) text << '0';
    text << " = " << (sys.h_x.get(q) ? '1' : '0') << "\n";
  }
  return text.str();
}

}  // namespace cpf
