#include "hqrl/quantum/state_vector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hqrl/quantum/kernels.hpp"

namespace hqrl::quantum {

namespace {

void check_qubit(const StateVector& sv, int qubit, const char* op) {
  if (qubit < 0 || qubit >= sv.num_qubits()) {
    throw std::out_of_range(std::string(op) + ": qubit index " +
                            std::to_string(qubit) + " out of range for " +
                            std::to_string(sv.num_qubits()) + " qubits");
  }
}

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(num_qubits));
  }
  amps_.assign(std::size_t{1} << num_qubits, {0.0, 0.0});
  amps_[0] = {1.0, 0.0};
}

double StateVector::norm_sq() const {
  return kernels::norm_sq(amps_.data(), amps_.size());
}

StateVector init_zero_state(int num_qubits) { return StateVector(num_qubits); }

void apply_rotation(StateVector& sv, int qubit, double theta, double phi) {
  check_qubit(sv, qubit, "apply_rotation");
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw std::invalid_argument("apply_rotation: angles must be finite");
  }
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const std::complex<double> zm{std::cos(0.5 * phi), -std::sin(0.5 * phi)};
  const std::complex<double> zp = std::conj(zm);
  const std::complex<double> mis{0.0, -s};
  // Rz(phi) * Rx(theta)
  const kernels::Mat2 u{zm * c, zm * mis, zp * mis, zp * c};
  kernels::apply_single_qubit(sv.amplitudes().data(), sv.dim(), qubit, u);
}

void apply_cz(StateVector& sv, int p, int k) {
  check_qubit(sv, p, "apply_cz");
  check_qubit(sv, k, "apply_cz");
  if (p == k) return;
  kernels::apply_cz(sv.amplitudes().data(), sv.dim(), p, k);
}

void apply_pauli_x(StateVector& sv, int qubit) {
  check_qubit(sv, qubit, "apply_pauli_x");
  const kernels::Mat2 u{{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}};
  kernels::apply_single_qubit(sv.amplitudes().data(), sv.dim(), qubit, u);
}

void apply_pauli_z(StateVector& sv, int qubit) {
  check_qubit(sv, qubit, "apply_pauli_z");
  const kernels::Mat2 u{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {-1.0, 0.0}};
  kernels::apply_single_qubit(sv.amplitudes().data(), sv.dim(), qubit, u);
}

std::vector<double> exact_marginals(const StateVector& sv) {
  std::vector<double> probs(sv.num_qubits());
  const auto* amps = sv.amplitudes().data();
  const std::size_t dim = sv.dim();
#pragma omp parallel for schedule(static) if (dim >= kernels::kParallelMinDim)
  for (int q = 0; q < sv.num_qubits(); ++q) {
    probs[q] = kernels::serial::marginal_one(amps, dim, q);
  }
  return probs;
}

}  // namespace hqrl::quantum
