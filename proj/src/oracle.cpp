#include "cpf/oracle.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "cpf/errors.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace cpf {

namespace {

constexpr std::complex<double> kImag{0.0, 1.0};

std::complex<double> minus_i_pow(std::uint32_t y) {
  switch (y & 3u) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, -1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, 1.0};
  }
}

std::uint64_t mask_to_u64(const BitVec& v) { return v.words().empty() ? 0 : v.words()[0]; }

}  // namespace

StateVector::StateVector(std::uint32_t n_qubits) : n_(n_qubits) {
  if (n_ > kMaxStatevectorQubits) {
    throw GuardExceeded("statevector simulation is limited to " +
                        std::to_string(kMaxStatevectorQubits) + " qubits");
  }
  amps_.assign(std::uint64_t{1} << n_, {0.0, 0.0});
  amps_[0] = {1.0, 0.0};
}

void StateVector::apply_pauli_rotation(const PauliOperator& p, double phi) {
  if (p.n_qubits() != n_) throw std::invalid_argument("qubit count mismatch");
  const double c = std::cos(phi / 2.0);
  const double s = std::sin(phi / 2.0);
  // P |b> = phase(b) |b ^ x> with phase(b) = sign (-i)^y (-1)^{z.(b^x)}.
  const std::complex<double> base =
      -kImag * s * minus_i_pow(and_popcount(p.z_bits(), p.x_bits())) *
      static_cast<double>(p.sign());
  const std::uint64_t xmask = mask_to_u64(p.x_bits());
  const std::uint64_t zmask = mask_to_u64(p.z_bits());
  const std::uint64_t dim = amps_.size();
  if (xmask == 0) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      const bool neg = std::popcount(b & zmask) & 1;
      amps_[b] *= c + (neg ? -base : base);
    }
    return;
  }
  for (std::uint64_t b = 0; b < dim; ++b) {
    const std::uint64_t partner = b ^ xmask;
    if (partner < b) continue;
    // (P psi)[b] = (-1)^{z.b} (-i)^y sign psi[b ^ x]
    const bool neg_b = std::popcount(b & zmask) & 1;
    const bool neg_p = std::popcount(partner & zmask) & 1;
    const std::complex<double> ab = amps_[b], ap = amps_[partner];
    amps_[b] = c * ab + (neg_b ? -base : base) * ap;
    amps_[partner] = c * ap + (neg_p ? -base : base) * ab;
  }
}

double StateVector::expectation(const PauliOperator& p) const {
  if (p.n_qubits() != n_) throw std::invalid_argument("qubit count mismatch");
  const std::complex<double> coeff =
      minus_i_pow(and_popcount(p.z_bits(), p.x_bits())) * static_cast<double>(p.sign());
  const std::uint64_t xmask = mask_to_u64(p.x_bits());
  const std::uint64_t zmask = mask_to_u64(p.z_bits());
  std::complex<double> total{0.0, 0.0};
  for (std::uint64_t b = 0; b < amps_.size(); ++b) {
    const std::uint64_t src = b ^ xmask;
    const bool neg = std::popcount(b & zmask) & 1;
    total += std::conj(amps_[b]) * (neg ? -coeff : coeff) * amps_[src];
  }
  return total.real();
}

double StateVector::expectation(const Observable& h) const {
  double total = 0.0;
  for (const auto& term : h.terms()) total += term.coeff * expectation(term.pauli);
  return total;
}

double StateVector::norm() const {
  double n2 = 0.0;
  for (const auto& a : amps_) n2 += std::norm(a);
  return std::sqrt(n2);
}

double simulate_loss(const PauliCircuit& circuit, const Observable& h,
                     const std::vector<double>& phi) {
  if (h.n_qubits() != circuit.n_qubits()) {
    throw std::invalid_argument("observable qubit count mismatch");
  }
  if (phi.size() != circuit.size()) {
    throw std::invalid_argument("angle vector length does not match parameter count");
  }
  StateVector psi(circuit.n_qubits());
  for (std::uint32_t i = 0; i < circuit.size(); ++i) {
    psi.apply_pauli_rotation(circuit.generator(i), phi[i]);
  }
  if (std::abs(psi.norm() - 1.0) > 1e-9) {
    throw std::runtime_error("statevector norm drifted beyond tolerance");
  }
  return psi.expectation(h);
}

FourierSeries extract_coefficients(const PauliCircuit& circuit, const Observable& h,
                                   std::uint32_t max_params_guard) {
  const std::uint32_t m = circuit.size();
  if (m > max_params_guard || m > 20) {
    throw GuardExceeded("coefficient extraction needs 3^M grid evaluations; M = " +
                        std::to_string(m) + " exceeds the guard");
  }
  if (circuit.n_qubits() > kMaxStatevectorQubits) {
    throw GuardExceeded("statevector simulation is limited to " +
                        std::to_string(kMaxStatevectorQubits) + " qubits");
  }
  std::uint64_t grid_size = 1;
  for (std::uint32_t i = 0; i < m; ++i) grid_size *= 3;

  constexpr double kThird = 2.0943951023931954923;  // 2 pi / 3
  std::vector<double> values(grid_size);
  bool failed = false;
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (std::uint64_t g = 0; g < grid_size; ++g) {
    try {
      std::vector<double> phi(m);
      std::uint64_t rest = g;
      for (std::uint32_t i = 0; i < m; ++i) {
        phi[i] = kThird * static_cast<double>(rest % 3);
        rest /= 3;
      }
      values[g] = simulate_loss(circuit, h, phi);
    } catch (...) {
      failed = true;
    }
  }
  if (failed) {
    throw std::runtime_error("grid evaluation failed");
  }

  // Separable 3-point transform along each parameter axis: digit 0 carries
  // the constant part, 1 the cos component, 2 the sin component.
  const double inv3 = 1.0 / 3.0;
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  std::uint64_t stride = 1;
  for (std::uint32_t axis = 0; axis < m; ++axis) {
    for (std::uint64_t block = 0; block < grid_size; block += stride * 3) {
      for (std::uint64_t off = 0; off < stride; ++off) {
        const std::uint64_t i0 = block + off;
        const double f0 = values[i0], f1 = values[i0 + stride], f2 = values[i0 + 2 * stride];
        values[i0] = (f0 + f1 + f2) * inv3;
        values[i0 + stride] = (2.0 * f0 - f1 - f2) * inv3;
        values[i0 + 2 * stride] = (f1 - f2) * inv_sqrt3;
      }
    }
    stride *= 3;
  }

  FourierSeries series(m);
  for (std::uint64_t g = 0; g < grid_size; ++g) {
    if (std::abs(values[g]) < 1e-12) continue;
    MonomialKey key;
    std::uint64_t rest = g;
    for (std::uint32_t i = 0; i < m; ++i) {
      const int digit = static_cast<int>(rest % 3);
      rest /= 3;
      if (digit == 1) key.factors.emplace_back(i + 1, Trig::cos);
      if (digit == 2) key.factors.emplace_back(i + 1, Trig::sin);
    }
    series.add(key, values[g]);
  }
  return series;
}

std::string count_generic_coefficients(int m) {
  if (m < 0) throw std::invalid_argument("parameter count must be non-negative");
  // 3^m as a decimal string via schoolbook multiplication.
  std::string digits = "1";
  for (int i = 0; i < m; ++i) {
    int carry = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
      const int d = (*it - '0') * 3 + carry;
      *it = static_cast<char>('0' + d % 10);
      carry = d / 10;
    }
    while (carry > 0) {
      digits.insert(digits.begin(), static_cast<char>('0' + carry % 10));
      carry /= 10;
    }
  }
  return digits;
}

}  // namespace cpf
