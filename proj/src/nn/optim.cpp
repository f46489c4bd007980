#include "hqrl/nn/optim.hpp"

#include <cmath>
#include <stdexcept>

namespace hqrl::nn {

void adam_step(std::vector<double>& params, std::span<const double> grads,
               AdamState& state) {
  if (params.size() != grads.size() || params.size() != state.m.size()) {
    throw std::invalid_argument("adam_step: shape mismatch");
  }
  const AdamConfig& c = state.config;
  state.step += 1;
  const double bc1 = 1.0 - std::pow(c.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(c.beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    state.m[i] = c.beta1 * state.m[i] + (1.0 - c.beta1) * g;
    state.v[i] = c.beta2 * state.v[i] + (1.0 - c.beta2) * g * g;
    const double mhat = state.m[i] / bc1;
    const double vhat = state.v[i] / bc2;
    params[i] -= c.lr * mhat / (std::sqrt(vhat) + c.eps);
  }
}

void soft_update(DenseNet& target, const DenseNet& online, double tau) {
  if (target.layer_sizes() != online.layer_sizes()) {
    throw std::invalid_argument("soft_update: topology mismatch");
  }
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw std::invalid_argument("soft_update: tau must lie in [0, 1]");
  }
  auto& t = target.params();
  const auto& o = online.params();
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = tau * o[i] + (1.0 - tau) * t[i];
  }
}

}  // namespace hqrl::nn
