#include "hqrl/rl/critic.hpp"

#include <stdexcept>

namespace hqrl::rl {

Critic::Critic(int obs_dim, int act_dim, int width, Rng& init_rng)
    : obs_dim_(obs_dim),
      act_dim_(act_dim),
      width_(width),
      trunk_({obs_dim, width}, nn::Activation::leaky_relu, init_rng),
      head_({width + act_dim, width, 1}, nn::Activation::linear, init_rng) {}

Critic::Pass Critic::forward_batch(std::span<const double> obs,
                                   std::span<const double> act, int batch,
                                   bool with_tape) const {
  if (obs.size() != static_cast<std::size_t>(batch) * obs_dim_ ||
      act.size() != static_cast<std::size_t>(batch) * act_dim_) {
    throw std::invalid_argument("critic: batch dimension mismatch");
  }
  Pass pass;
  pass.batch = batch;
  const std::vector<double> features =
      trunk_.forward_batch(obs, batch, with_tape ? &pass.trunk_tape : nullptr);

  std::vector<double> joint(static_cast<std::size_t>(batch) * (width_ + act_dim_));
  for (int b = 0; b < batch; ++b) {
    double* row = &joint[static_cast<std::size_t>(b) * (width_ + act_dim_)];
    const double* f = &features[static_cast<std::size_t>(b) * width_];
    const double* a = &act[static_cast<std::size_t>(b) * act_dim_];
    for (int i = 0; i < width_; ++i) row[i] = f[i];
    for (int i = 0; i < act_dim_; ++i) row[width_ + i] = a[i];
  }
  pass.values = head_.forward_batch(joint, batch, with_tape ? &pass.head_tape : nullptr);
  return pass;
}

Critic::Grads Critic::backward(Pass& pass, std::span<const double> upstream) const {
  nn::DenseNet::Gradients head_grads = head_.backward(pass.head_tape, upstream);

  const int batch = pass.batch;
  std::vector<double> trunk_up(static_cast<std::size_t>(batch) * width_);
  Grads out;
  out.action.resize(static_cast<std::size_t>(batch) * act_dim_);
  for (int b = 0; b < batch; ++b) {
    const double* row = &head_grads.inputs[static_cast<std::size_t>(b) * (width_ + act_dim_)];
    for (int i = 0; i < width_; ++i) trunk_up[static_cast<std::size_t>(b) * width_ + i] = row[i];
    for (int i = 0; i < act_dim_; ++i) {
      out.action[static_cast<std::size_t>(b) * act_dim_ + i] = row[width_ + i];
    }
  }
  nn::DenseNet::Gradients trunk_grads = trunk_.backward(pass.trunk_tape, trunk_up);
  out.trunk = std::move(trunk_grads.params);
  out.head = std::move(head_grads.params);
  return out;
}

void Critic::apply_gradients(const Grads& grads, nn::AdamState& trunk_opt,
                             nn::AdamState& head_opt) {
  nn::adam_step(trunk_.params(), grads.trunk, trunk_opt);
  nn::adam_step(head_.params(), grads.head, head_opt);
}

void soft_update_critic(Critic& target, const Critic& online, double tau) {
  nn::soft_update(target.trunk(), online.trunk(), tau);
  nn::soft_update(target.head(), online.head(), tau);
}

}  // namespace hqrl::rl
