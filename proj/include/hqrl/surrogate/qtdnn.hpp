#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"

#include "hqrl/nn/dense_net.hpp"
#include "hqrl/nn/optim.hpp"
#include "hqrl/pqc/layer.hpp"
#include "hqrl/rng.hpp"

namespace hqrl::surrogate {

// One observed quantum-layer evaluation: encoded controls and the sampled
// per-qubit statistics.
struct QtPair {
  pqc::ControlVector q_i;
  std::vector<double> q_o;
};

// FIFO ring of (q_i, q_o) pairs feeding surrogate fits.
class QtBuffer {
 public:
  QtBuffer(std::size_t capacity, int control_dim, int num_qubits);

  void record_pair(const pqc::ControlVector& q_i, std::span<const double> q_o);

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }
  // i = 0 is the oldest retained pair.
  const QtPair& at(std::size_t i) const;

 private:
  std::size_t capacity_;
  int control_dim_;
  int num_qubits_;
  std::vector<QtPair> store_;
  std::size_t head_ = 0;  // next write slot
  std::size_t size_ = 0;
};

struct SurrogateConfig {
  int hidden_width = 2048;    // L_h
  int tiny_batches = 32;      // fit steps per update epoch
  int tiny_batch_size = 64;
  double batch_mix = 0.5;     // fraction of tiny-batch rows from the current batch
  std::size_t buffer_capacity = 10000;

  void validate() const;
};

// [I, L_h, N] with LeakyReLU hidden and sigmoid output.
nn::DenseNet make_qtdnn(const pqc::PqcConfig& config, int hidden_width, Rng& init_rng);

// Closed-form parameter count of that topology: I*L_h + L_h + L_h*N + N.
std::uint64_t surrogate_param_count(int num_qubits, int num_layers, int hidden_width);

// Runs `tiny_batches` Adam steps on mean BCE over tiny-batches drawn from the
// current batch and the replay ring. Returns the per-step loss trace; the net
// is untouched when tiny_batches == 0.
std::vector<double> fit_surrogate(nn::DenseNet& qtdnn, std::span<const QtPair> batch,
                                  const QtBuffer& buffer, const SurrogateConfig& config,
                                  nn::AdamState& optimizer, Rng& rng);

// Worst-case output and Jacobian deviation of the surrogate from the exact
// layer map over probes in an angle-subspace ball (entangler routing fixed
// at the center's values).
struct FidelityReport {
  double eps1 = 0.0;  // max Euclidean output gap
  double eps2 = 0.0;  // max Frobenius Jacobian gap over angle controls
  double radius = 0.0;
  int probes = 0;
  std::vector<double> center;

  nlohmann::json to_json() const;
};

FidelityReport fidelity_report(const nn::DenseNet& qtdnn, const pqc::PqcConfig& config,
                               const pqc::ControlVector& center, double radius,
                               int num_probes, Rng& rng);

// Input-Jacobian of the surrogate restricted to angle controls (N x 2NM).
std::vector<double> surrogate_angle_jacobian(const nn::DenseNet& qtdnn,
                                             const pqc::ControlVector& x,
                                             const pqc::PqcConfig& config);

}  // namespace hqrl::surrogate
