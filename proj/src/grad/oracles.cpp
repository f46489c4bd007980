#include "hqrl/grad/oracles.hpp"

#include <stdexcept>

namespace hqrl::grad {

namespace {

// Column j of [Q(q + s e_j) - Q(q - s e_j)] / denom over angle controls.
Jacobian two_point_jacobian(const pqc::ControlVector& q_i,
                            const pqc::PqcConfig& config, double shift,
                            double denom) {
  const int cols = config.angle_dim();
  const int rows = config.num_qubits;
  Jacobian jac{rows, cols, std::vector<double>(
                               static_cast<std::size_t>(rows) * cols, 0.0)};
  pqc::ControlVector probe = q_i;
  for (int j = 0; j < cols; ++j) {
    const double original = probe.values[static_cast<std::size_t>(j)];
    probe.values[static_cast<std::size_t>(j)] = original + shift;
    const auto plus = pqc::exact_layer_map(probe, config);
    probe.values[static_cast<std::size_t>(j)] = original - shift;
    const auto minus = pqc::exact_layer_map(probe, config);
    probe.values[static_cast<std::size_t>(j)] = original;
    for (int r = 0; r < rows; ++r) {
      jac.at(r, j) = (plus[static_cast<std::size_t>(r)] -
                      minus[static_cast<std::size_t>(r)]) /
                     denom;
    }
  }
  return jac;
}

}  // namespace

Jacobian finite_diff_jacobian(const pqc::ControlVector& q_i,
                              const pqc::PqcConfig& config, double step) {
  if (!(step > 0.0)) {
    throw std::invalid_argument("finite_diff_jacobian: step must be > 0");
  }
  return two_point_jacobian(q_i, config, step, 2.0 * step);
}

Jacobian parameter_shift_jacobian(const pqc::ControlVector& q_i,
                                  const pqc::PqcConfig& config, double shift) {
  return two_point_jacobian(q_i, config, shift, 2.0);
}

double max_abs_diff(const Jacobian& a, const Jacobian& b) {
  if (a.rows != b.rows || a.cols != b.cols) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    worst = std::max(worst, std::abs(a.data[i] - b.data[i]));
  }
  return worst;
}

}  // namespace hqrl::grad
