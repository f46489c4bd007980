#include "hqrl/rl/replay.hpp"

#include <stdexcept>

namespace hqrl::rl {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw std::invalid_argument("replay capacity must be > 0");
}

void ReplayBuffer::push(Transition t) {
  if (size_ < capacity_) {
    store_.push_back(std::move(t));
    ++size_;
  } else {
    store_[head_] = std::move(t);
  }
  head_ = (head_ + 1) % capacity_;
}

std::vector<std::size_t> ReplayBuffer::sample_indices(int n, Rng& rng) const {
  if (size_ == 0) throw std::logic_error("cannot sample from an empty replay buffer");
  std::vector<std::size_t> idx(static_cast<std::size_t>(n));
  for (auto& i : idx) i = rng.uniform_index(size_);
  return idx;
}

}  // namespace hqrl::rl
