#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hqrl/quantum/noise.hpp"
#include "hqrl/quantum/state_vector.hpp"
#include "hqrl/rng.hpp"

namespace hqrl::quantum {

// Measured bitstrings of one multi-shot run, packed as basis indices
// (qubit 0 = least-significant bit).
struct ShotRecord {
  int num_qubits = 0;
  std::vector<std::uint32_t> bitstrings;

  int shots() const { return static_cast<int>(bitstrings.size()); }
  bool bit(int shot, int qubit) const {
    return (bitstrings[static_cast<std::size_t>(shot)] >> qubit) & 1u;
  }
};

// Samples `shots` bitstrings from the circuit built by `execute_circuit`.
// With active noise the circuit is re-executed per shot so every trajectory
// draws fresh Pauli errors; noise-free circuits are executed once and sampled
// from the final distribution. Each shot owns an RNG stream derived from
// `seed`, so results are reproducible regardless of how shots are scheduled.
ShotRecord sample_shots(const std::function<StateVector(Rng&)>& execute_circuit,
                        int shots, const NoiseConfig& noise, std::uint64_t seed);

// Per-qubit fraction of shots that measured 1.
std::vector<double> empirical_marginals(const ShotRecord& record);

// Pauli-Z expectation view of a marginal vector: m = 1 - 2 p.
std::vector<double> expectation_view(std::span<const double> marginals);

}  // namespace hqrl::quantum
