#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cpf/bitvec.hpp"

namespace cpf {

/// Hermitian N-qubit Pauli operator in binary symplectic form.
///
/// The stored operator is sign * (-i)^{|z & x|} Z(z) X(x) with sign in
/// {+1, -1}; the (-i)^{|z & x|} factor turns every position with both bits
/// set into a proper Hermitian Y, so the class can only represent Hermitian
/// Paulis and a phase of +-i never appears in the public interface. Qubit 0
/// is the leftmost character of the text form.
class PauliOperator {
 public:
  /// Identity on n qubits.
  explicit PauliOperator(std::uint32_t n_qubits)
      : z_(n_qubits), x_(n_qubits), sign_(+1) {}

  PauliOperator(BitVec z, BitVec x, int sign);

  /// Parses a string over {I, X, Y, Z}; character i addresses qubit i.
  static PauliOperator parse(const std::string& text, int sign = +1);

  std::uint32_t n_qubits() const { return z_.size(); }
  const BitVec& z_bits() const { return z_; }
  const BitVec& x_bits() const { return x_; }
  int sign() const { return sign_; }
  bool is_identity() const { return z_.none() && x_.none(); }

  PauliOperator with_sign(int sign) const { return PauliOperator(z_, x_, sign); }

  char letter(std::uint32_t q) const;
  std::string str() const;  // letters only, no sign

  friend bool operator==(const PauliOperator& a, const PauliOperator& b) {
    return a.sign_ == b.sign_ && a.z_ == b.z_ && a.x_ == b.x_;
  }
  friend bool operator!=(const PauliOperator& a, const PauliOperator& b) { return !(a == b); }

 private:
  BitVec z_, x_;
  int sign_;
};

/// Symplectic inner product <a, b> = a.z * b.x + a.x * b.z (mod 2);
/// 0 when the operators commute, 1 when they anti-commute.
bool anti_commute(const PauliOperator& a, const PauliOperator& b);
bool commutes(const PauliOperator& a, const PauliOperator& b);

/// Hermitian product: a * b when [a, b] = 0 and i * a * b when {a, b} = 0.
/// Both cases give a Hermitian Pauli with a +-1 sign.
PauliOperator multiply(const PauliOperator& a, const PauliOperator& b);

/// <0...0| p |0...0>: 0 unless x = 0, otherwise the sign of p.
int expectation_in_zero(const PauliOperator& p);

/// GF(2) row-echelon basis supporting incremental insertion and
/// span-membership tests. Rows are kept ordered by strictly increasing pivot.
class Gf2Basis {
 public:
  explicit Gf2Basis(std::uint32_t n) : n_(n) {}

  std::uint32_t n() const { return n_; }
  std::uint32_t rank() const { return static_cast<std::uint32_t>(rows_.size()); }
  const std::vector<BitVec>& rows() const { return rows_; }
  const std::vector<std::uint32_t>& pivots() const { return pivots_; }

  /// Reduces v against the rows and appends the residual when nonzero.
  /// Returns true when v was independent of the current span.
  bool insert(const BitVec& v);

  bool in_span(const BitVec& v) const;

 private:
  BitVec reduce(BitVec v) const;

  std::uint32_t n_;
  std::vector<BitVec> rows_;
  std::vector<std::uint32_t> pivots_;
};

}  // namespace cpf
