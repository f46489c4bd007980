#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hqrl/rng.hpp"

namespace hqrl::nn {

enum class Activation { linear, leaky_relu, tanh, sigmoid };

std::string activation_name(Activation a);
Activation activation_from_name(const std::string& name);

inline constexpr double kLeakyReluSlope = 0.01;

// Cached intermediates of one forward pass; consumed by exactly one backward.
struct Tape {
  int batch = 0;
  std::vector<std::vector<double>> acts;  // acts[l]: input to layer l, batch x n_l
  std::vector<std::vector<double>> pre;   // pre[l]: pre-activations, batch x n_{l+1}
  bool consumed = false;
};

// Feed-forward chain with LeakyReLU hidden layers and a configurable output
// activation. Weights are stored input-major (W[i * n_out + o]) so the forward
// affine map and the weight-gradient accumulation both stream contiguous rows,
// and every output element is accumulated in a fixed order regardless of the
// OpenMP thread count.
class DenseNet {
 public:
  DenseNet() = default;
  DenseNet(std::vector<int> layer_sizes, Activation output_activation, Rng& init_rng);
  // Adopts externally supplied parameters (checkpoint restore).
  DenseNet(std::vector<int> layer_sizes, Activation output_activation,
           std::vector<double> params);

  bool empty() const { return layer_sizes_.empty(); }
  int input_dim() const { return layer_sizes_.front(); }
  int output_dim() const { return layer_sizes_.back(); }
  const std::vector<int>& layer_sizes() const { return layer_sizes_; }
  Activation output_activation() const { return output_activation_; }

  std::size_t param_count() const { return params_.size(); }
  std::vector<double>& params() { return params_; }
  const std::vector<double>& params() const { return params_; }
  std::size_t weight_offset(int layer) const { return weight_off_[layer]; }
  std::size_t bias_offset(int layer) const { return bias_off_[layer]; }

  std::vector<double> forward(std::span<const double> input, Tape* tape = nullptr) const;
  // `inputs` is batch x input_dim row-major; returns batch x output_dim.
  std::vector<double> forward_batch(std::span<const double> inputs, int batch,
                                    Tape* tape = nullptr) const;

  struct Gradients {
    std::vector<double> params;  // same layout as params()
    std::vector<double> inputs;  // batch x input_dim
  };
  // `upstream` is dLoss/dOutput, batch x output_dim. Consumes the tape.
  Gradients backward(Tape& tape, std::span<const double> upstream) const;

 private:
  std::vector<int> layer_sizes_;
  Activation output_activation_ = Activation::linear;
  std::vector<double> params_;
  std::vector<std::size_t> weight_off_, bias_off_;

  int num_layers() const { return static_cast<int>(layer_sizes_.size()) - 1; }
  void build_offsets();
  Activation layer_activation(int layer) const {
    return layer == num_layers() - 1 ? output_activation_ : Activation::leaky_relu;
  }
};

}  // namespace hqrl::nn
