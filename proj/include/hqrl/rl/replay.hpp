#pragma once

#include <cstddef>
#include <vector>

#include "hqrl/pqc/layer.hpp"
#include "hqrl/rng.hpp"

namespace hqrl::rl {

// One experience tuple. q_i / q_o are empty for classical middle blocks.
struct Transition {
  std::vector<double> obs;
  std::vector<double> action;
  pqc::ControlVector q_i;
  std::vector<double> q_o;
  double reward = 0.0;
  std::vector<double> next_obs;
  bool done = false;  // true termination only; step-cap truncation bootstraps
};

// Uniform-sampling FIFO ring.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Transition t);
  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }
  const Transition& at(std::size_t i) const { return store_[i]; }

  // n indices drawn uniformly with replacement; requires a non-empty buffer.
  std::vector<std::size_t> sample_indices(int n, Rng& rng) const;

 private:
  std::size_t capacity_;
  std::vector<Transition> store_;
  std::size_t head_ = 0;
  std::size_t size_ = 0;
};

}  // namespace hqrl::rl
