#include "hqrl/nn/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hqrl::nn {

LossResult bce_loss(std::span<const double> pred, std::span<const double> target) {
  if (pred.size() != target.size() || pred.empty()) {
    throw std::invalid_argument("bce_loss: pred/target size mismatch or empty");
  }
  const double inv_n = 1.0 / static_cast<double>(pred.size());
  LossResult out;
  out.grad.resize(pred.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double p = std::clamp(pred[i], kBceClamp, 1.0 - kBceClamp);
    const double t = target[i];
    acc -= t * std::log(p) + (1.0 - t) * std::log(1.0 - p);
    out.grad[i] = (p - t) / (p * (1.0 - p)) * inv_n;
  }
  out.value = acc * inv_n;
  return out;
}

LossResult mse_loss(std::span<const double> pred, std::span<const double> target) {
  if (pred.size() != target.size() || pred.empty()) {
    throw std::invalid_argument("mse_loss: pred/target size mismatch or empty");
  }
  const double inv_n = 1.0 / static_cast<double>(pred.size());
  LossResult out;
  out.grad.resize(pred.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double e = pred[i] - target[i];
    acc += e * e;
    out.grad[i] = 2.0 * e * inv_n;
  }
  out.value = acc * inv_n;
  return out;
}

}  // namespace hqrl::nn
