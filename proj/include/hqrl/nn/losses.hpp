#pragma once

#include <span>
#include <vector>

namespace hqrl::nn {

struct LossResult {
  double value = 0.0;
  std::vector<double> grad;  // dLoss/dPred, same shape as pred
};

// Mean binary cross-entropy per element. Predictions are clamped to
// [1e-7, 1 - 1e-7] before the logs.
LossResult bce_loss(std::span<const double> pred, std::span<const double> target);

// Mean squared error per element.
LossResult mse_loss(std::span<const double> pred, std::span<const double> target);

inline constexpr double kBceClamp = 1e-7;

}  // namespace hqrl::nn
