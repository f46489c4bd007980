#pragma once

#include <atomic>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hqrl/quantum/noise.hpp"
#include "hqrl/quantum/sampling.hpp"
#include "hqrl/quantum/state_vector.hpp"
#include "hqrl/rng.hpp"

namespace hqrl::pqc {

enum class OutputMode { marginal, most_probable_bitstring };

std::string output_mode_name(OutputMode mode);
OutputMode output_mode_from_name(const std::string& name);

struct PqcConfig {
  int num_qubits = 0;
  int num_layers = 0;
  int shots = 1;
  quantum::NoiseConfig noise;
  OutputMode output_mode = OutputMode::marginal;

  // Control dimension I = (2N + 2) M.
  int control_dim() const { return (2 * num_qubits + 2) * num_layers; }
  int angle_dim() const { return 2 * num_qubits * num_layers; }

  void validate() const;
};

// Encoded control vector, laid out [theta (N*M) | phi (N*M) | raw index (2M)].
// Within each angle segment the order is layer-major: entry l*N + q addresses
// qubit q in layer l. Index controls stay raw; rounding happens at decode.
struct ControlVector {
  int num_qubits = 0;
  int num_layers = 0;
  std::vector<double> values;

  bool empty() const { return values.empty(); }
  int size() const { return static_cast<int>(values.size()); }

  double theta(int layer, int qubit) const {
    return values[static_cast<std::size_t>(layer * num_qubits + qubit)];
  }
  double phi(int layer, int qubit) const {
    return values[static_cast<std::size_t>(num_qubits * num_layers +
                                           layer * num_qubits + qubit)];
  }
  std::pair<double, double> raw_entangler(int layer) const {
    const std::size_t base =
        static_cast<std::size_t>(2 * num_qubits * num_layers + 2 * layer);
    return {values[base], values[base + 1]};
  }
};

// Per-qubit statistics returned by one quantum-layer call.
using MarginalVector = std::vector<double>;

// Quantum cost accounting: one pqc_call per layer evaluation, `shots` shot
// executions each. Thread-safe so parallel rollouts account correctly.
class CallCounter {
 public:
  CallCounter() = default;
  CallCounter(const CallCounter& other) {
    restore(other.pqc_calls(), other.shot_executions());
  }
  CallCounter& operator=(const CallCounter& other) {
    restore(other.pqc_calls(), other.shot_executions());
    return *this;
  }

  void restore(std::uint64_t calls, std::uint64_t shots) {
    pqc_calls_.store(calls, std::memory_order_relaxed);
    shot_executions_.store(shots, std::memory_order_relaxed);
  }

  void record_call(int shots) {
    pqc_calls_.fetch_add(1, std::memory_order_relaxed);
    shot_executions_.fetch_add(static_cast<std::uint64_t>(shots),
                               std::memory_order_relaxed);
  }
  std::uint64_t pqc_calls() const { return pqc_calls_.load(std::memory_order_relaxed); }
  std::uint64_t shot_executions() const {
    return shot_executions_.load(std::memory_order_relaxed);
  }

 private:
  std::atomic<std::uint64_t> pqc_calls_{0};
  std::atomic<std::uint64_t> shot_executions_{0};
};

// Maps raw network outputs to circuit controls: angle entries via pi*tanh,
// index entries passed through untouched.
ControlVector encode_controls(std::span<const double> raw, const PqcConfig& config);

// Entangler pair from two raw index controls:
// round(clamp((N-1) * (tanh(raw) + 1) / 2, 0, N-1)), half away from zero.
std::pair<int, int> decode_entangler(double raw_p, double raw_k, int num_qubits);

// Builds and runs the circuit once. When `noise_rng` is non-null a stochastic
// Pauli fault is drawn after every applied gate (each rotation; both qubits of
// an applied CZ).
quantum::StateVector execute_circuit(const ControlVector& q_i,
                                     const PqcConfig& config, Rng* noise_rng);

// One quantum-layer call: S shots, counter bump, empirical statistics.
MarginalVector run_quantum_layer(const ControlVector& q_i, const PqcConfig& config,
                                 Rng& rng, CallCounter& counter);

// Noiseless infinite-shot limit of the layer map; deterministic oracle,
// no counter increment.
MarginalVector exact_layer_map(const ControlVector& q_i, const PqcConfig& config);

// Modal sampled bitstring as a 0/1 vector; ties break to the lowest basis index.
std::vector<double> modal_bitstring(const quantum::ShotRecord& record);

// Debug/diffing view of the decoded circuit.
nlohmann::json circuit_to_json(const ControlVector& q_i, const PqcConfig& config);

}  // namespace hqrl::pqc
