#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace hqrl::quantum {

// 2^24 amplitudes (256 MiB) is the memory guard.
inline constexpr int kMaxQubits = 24;

// Dense amplitude vector over the computational basis. Qubit 0 is the
// least-significant bit of the basis index.
class StateVector {
 public:
  explicit StateVector(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::complex<double>& amp(std::size_t basis) { return amps_[basis]; }
  const std::complex<double>& amp(std::size_t basis) const { return amps_[basis]; }
  std::vector<std::complex<double>>& amplitudes() { return amps_; }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }

  double norm_sq() const;

 private:
  int num_qubits_;
  std::vector<std::complex<double>> amps_;
};

StateVector init_zero_state(int num_qubits);

// R(theta, phi) = Rz(phi) * Rx(theta) with the half-angle convention
// Rx(t) = exp(-i t X / 2), Rz(p) = exp(-i p Z / 2). The X rotation acts first.
void apply_rotation(StateVector& sv, int qubit, double theta, double phi);

// CZ on (p, k); identity when p == k.
void apply_cz(StateVector& sv, int p, int k);

void apply_pauli_x(StateVector& sv, int qubit);
void apply_pauli_z(StateVector& sv, int qubit);

// Per-qubit probability of measuring 1.
std::vector<double> exact_marginals(const StateVector& sv);

}  // namespace hqrl::quantum
