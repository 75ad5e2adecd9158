#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "cpf/circuit.hpp"
#include "cpf/series.hpp"

namespace cpf {

inline constexpr std::uint32_t kMaxStatevectorQubits = 14;
inline constexpr std::uint32_t kMaxExtractionParams = 9;  // 3^M grid points

/// Dense statevector over 2^n amplitudes; qubit q addresses bit q of the
/// amplitude index. Serves as the independent ground truth for the
/// expansion engine at desk scale.
class StateVector {
 public:
  explicit StateVector(std::uint32_t n_qubits);  // |0...0>

  std::uint32_t n_qubits() const { return n_; }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }

  /// exp(-i phi/2 P) = cos(phi/2) I - i sin(phi/2) P.
  void apply_pauli_rotation(const PauliOperator& p, double phi);

  double expectation(const PauliOperator& p) const;
  double expectation(const Observable& h) const;
  double norm() const;

 private:
  std::uint32_t n_;
  std::vector<std::complex<double>> amps_;
};

/// <0| U†(phi) H U(phi) |0> by dense simulation; guards n <= 14 and checks
/// unitarity drift.
double simulate_loss(const PauliCircuit& circuit, const Observable& h,
                     const std::vector<double>& phi);

/// Exact Fourier coefficients from losses on the grid {0, 2pi/3, 4pi/3}^M:
/// the 3-point DFT is exact for trigonometric polynomials with per-angle
/// frequencies in {-1, 0, 1}.
FourierSeries extract_coefficients(const PauliCircuit& circuit, const Observable& h,
                                   std::uint32_t max_params_guard = kMaxExtractionParams);

/// 3^M = sum_m 2^m binom(M, m), exactly, as a decimal string.
std::string count_generic_coefficients(int m);

}  // namespace cpf
