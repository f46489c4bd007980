#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hqrl/nn/dense_net.hpp"

namespace hqrl::nn {

struct AdamConfig {
  double lr = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  AdamConfig config;
  std::vector<double> m, v;
  std::uint64_t step = 0;

  AdamState() = default;
  explicit AdamState(std::size_t num_params, AdamConfig cfg = {})
      : config(cfg), m(num_params, 0.0), v(num_params, 0.0) {}
};

// One bias-corrected Adam step applied in place.
void adam_step(std::vector<double>& params, std::span<const double> grads,
               AdamState& state);

// target <- tau * online + (1 - tau) * target, parameter-wise.
void soft_update(DenseNet& target, const DenseNet& online, double tau);

}  // namespace hqrl::nn
