#pragma once

#include <cmath>
#include <vector>

#include "hqrl/pqc/layer.hpp"

namespace hqrl::grad {

// Jacobian of the layer map over the 2NM angle controls only; the 2M
// entangler-index controls are piecewise constant and excluded.
struct Jacobian {
  int rows = 0;  // output dim N
  int cols = 0;  // angle controls 2NM
  std::vector<double> data;  // row-major

  double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
};

// Central differences on the noiseless layer map.
Jacobian finite_diff_jacobian(const pqc::ControlVector& q_i,
                              const pqc::PqcConfig& config, double step = 1e-4);

// Two-point shift rule, exact for half-angle Pauli rotations at shift pi/2.
// `shift` exists as a fault-injection hook for the verification harness.
Jacobian parameter_shift_jacobian(const pqc::ControlVector& q_i,
                                  const pqc::PqcConfig& config,
                                  double shift = M_PI / 2.0);

double max_abs_diff(const Jacobian& a, const Jacobian& b);

}  // namespace hqrl::grad
