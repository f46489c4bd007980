#pragma once

#include <stdexcept>

#include "hqrl/rng.hpp"

namespace hqrl::quantum {

// Stochastic Pauli trajectory noise: after a gate, a bit flip (X) and a phase
// flip (Z) each fire independently with their configured per-gate rate.
struct NoiseConfig {
  double bit_flip_rate = 0.0;
  double phase_flip_rate = 0.0;

  bool is_zero() const { return bit_flip_rate == 0.0 && phase_flip_rate == 0.0; }

  void validate() const {
    if (!(bit_flip_rate >= 0.0 && bit_flip_rate <= 1.0) ||
        !(phase_flip_rate >= 0.0 && phase_flip_rate <= 1.0)) {
      throw std::invalid_argument("noise rates must lie in [0, 1]");
    }
  }
};

enum class PauliError { none, x, z, xz };

inline PauliError sample_pauli_error(const NoiseConfig& noise, Rng& rng) {
  const bool flip_x = rng.uniform() < noise.bit_flip_rate;
  const bool flip_z = rng.uniform() < noise.phase_flip_rate;
  if (flip_x && flip_z) return PauliError::xz;
  if (flip_x) return PauliError::x;
  if (flip_z) return PauliError::z;
  return PauliError::none;
}

}  // namespace hqrl::quantum
