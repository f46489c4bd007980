#pragma once

#include <span>
#include <vector>

#include "hqrl/nn/dense_net.hpp"
#include "hqrl/nn/optim.hpp"
#include "hqrl/rng.hpp"

namespace hqrl::rl {

// Two-block critic: a state trunk [obs, width] with LeakyReLU output, then a
// joint head [width + act, width, 1] on the concatenated trunk features and
// action.
class Critic {
 public:
  Critic() = default;
  Critic(int obs_dim, int act_dim, int width, Rng& init_rng);

  struct Pass {
    int batch = 0;
    nn::Tape trunk_tape, head_tape;
    std::vector<double> values;  // batch scalars
  };

  Pass forward_batch(std::span<const double> obs, std::span<const double> act,
                     int batch, bool with_tape) const;

  struct Grads {
    std::vector<double> trunk;
    std::vector<double> head;
    std::vector<double> action;  // batch x act_dim, for actor updates
  };
  Grads backward(Pass& pass, std::span<const double> upstream) const;

  nn::DenseNet& trunk() { return trunk_; }
  nn::DenseNet& head() { return head_; }
  const nn::DenseNet& trunk() const { return trunk_; }
  const nn::DenseNet& head() const { return head_; }

  void apply_gradients(const Grads& grads, nn::AdamState& trunk_opt,
                       nn::AdamState& head_opt);

 private:
  int obs_dim_ = 0, act_dim_ = 0, width_ = 0;
  nn::DenseNet trunk_, head_;
};

void soft_update_critic(Critic& target, const Critic& online, double tau);

}  // namespace hqrl::rl
