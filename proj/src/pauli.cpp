#include "cpf/pauli.hpp"

#include <stdexcept>

namespace cpf {

PauliOperator::PauliOperator(BitVec z, BitVec x, int sign)
    : z_(std::move(z)), x_(std::move(x)), sign_(sign) {
  if (z_.size() != x_.size()) {
    throw std::invalid_argument("z and x bit vectors must have equal length");
  }
  if (sign_ != +1 && sign_ != -1) {
    throw std::invalid_argument("sign must be +1 or -1");
  }
}

PauliOperator PauliOperator::parse(const std::string& text, int sign) {
  if (text.empty()) {
    throw std::invalid_argument("empty Pauli string");
  }
  const auto n = static_cast<std::uint32_t>(text.size());
  BitVec z(n), x(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    switch (text[i]) {
      case 'I':
        break;
      case 'X':
        x.set(i, true);
        break;
      case 'Z':
        z.set(i, true);
        break;
      case 'Y':
        z.set(i, true);
        x.set(i, true);
        break;
      default:
        throw std::invalid_argument(std::string("illegal Pauli character '") + text[i] + "'");
    }
  }
  return PauliOperator(std::move(z), std::move(x), sign);
}

char PauliOperator::letter(std::uint32_t q) const {
  const bool z = z_.get(q), x = x_.get(q);
  if (z && x) return 'Y';
  if (z) return 'Z';
  if (x) return 'X';
  return 'I';
}

std::string PauliOperator::str() const {
  std::string s(n_qubits(), 'I');
  for (std::uint32_t q = 0; q < n_qubits(); ++q) s[q] = letter(q);
  return s;
}

bool anti_commute(const PauliOperator& a, const PauliOperator& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("qubit count mismatch");
  }
  return and_parity(a.z_bits(), b.x_bits()) ^ and_parity(a.x_bits(), b.z_bits());
}

bool commutes(const PauliOperator& a, const PauliOperator& b) { return !anti_commute(a, b); }

PauliOperator multiply(const PauliOperator& a, const PauliOperator& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("qubit count mismatch");
  }
  BitVec z = a.z_bits() ^ b.z_bits();
  BitVec x = a.x_bits() ^ b.x_bits();
  // Track the i-power picked up when rewriting the product in the stored
  // Hermitian form: a * b = i^k * sign_a * sign_b * Herm(z, x), with
  // k = y_c - y_a - y_b + 2 * |a.x & b.z| (mod 4) from commuting X(a.x)
  // past Z(b.z) and re-normalizing the per-qubit Y factors.
  const int ya = static_cast<int>(and_popcount(a.z_bits(), a.x_bits()) & 3u);
  const int yb = static_cast<int>(and_popcount(b.z_bits(), b.x_bits()) & 3u);
  const int yc = static_cast<int>(and_popcount(z, x) & 3u);
  const int swaps = static_cast<int>(and_popcount(a.x_bits(), b.z_bits()) & 1u);
  int k = (yc - ya - yb + 2 * swaps) % 4;
  if (k < 0) k += 4;
  if (anti_commute(a, b)) k = (k + 1) & 3;  // Hermitize: i * a * b
  // A Hermitian result has an even i-power left over.
  if (k & 1) {
    throw std::logic_error("non-Hermitian Pauli product");
  }
  const int sign = a.sign() * b.sign() * (k == 0 ? +1 : -1);
  return PauliOperator(std::move(z), std::move(x), sign);
}

int expectation_in_zero(const PauliOperator& p) {
  return p.x_bits().any() ? 0 : p.sign();
}

BitVec Gf2Basis::reduce(BitVec v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (v.get(pivots_[i])) v ^= rows_[i];
  }
  return v;
}

bool Gf2Basis::insert(const BitVec& v) {
  if (v.size() != n_) {
    throw std::invalid_argument("vector length does not match basis dimension");
  }
  BitVec r = reduce(v);
  const int pivot = r.lowest_set_bit();
  if (pivot < 0) return false;
  auto it = rows_.begin();
  auto pit = pivots_.begin();
  while (pit != pivots_.end() && *pit < static_cast<std::uint32_t>(pivot)) {
    ++pit;
    ++it;
  }
  rows_.insert(it, std::move(r));
  pivots_.insert(pit, static_cast<std::uint32_t>(pivot));
  return true;
}

bool Gf2Basis::in_span(const BitVec& v) const {
  if (v.size() != n_) {
    throw std::invalid_argument("vector length does not match basis dimension");
  }
  return reduce(v).none();
}

}  // namespace cpf
