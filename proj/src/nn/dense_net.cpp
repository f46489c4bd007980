#include "hqrl/nn/dense_net.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace hqrl::nn {

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::linear: return "linear";
    case Activation::leaky_relu: return "leaky_relu";
    case Activation::tanh: return "tanh";
    case Activation::sigmoid: return "sigmoid";
  }
  return "linear";
}

Activation activation_from_name(const std::string& name) {
  if (name == "linear") return Activation::linear;
  if (name == "leaky_relu") return Activation::leaky_relu;
  if (name == "tanh") return Activation::tanh;
  if (name == "sigmoid") return Activation::sigmoid;
  throw std::invalid_argument("unknown activation: " + name);
}

namespace {

inline double activate(double z, Activation a) {
  switch (a) {
    case Activation::linear: return z;
    case Activation::leaky_relu: return z > 0.0 ? z : kLeakyReluSlope * z;
    case Activation::tanh: return std::tanh(z);
    case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-z));
  }
  return z;
}

inline double activate_grad(double z, Activation a) {
  switch (a) {
    case Activation::linear: return 1.0;
    case Activation::leaky_relu: return z > 0.0 ? 1.0 : kLeakyReluSlope;
    case Activation::tanh: {
      const double t = std::tanh(z);
      return 1.0 - t * t;
    }
    case Activation::sigmoid: {
      const double s = 1.0 / (1.0 + std::exp(-z));
      return s * (1.0 - s);
    }
  }
  return 1.0;
}

}  // namespace

void DenseNet::build_offsets() {
  if (layer_sizes_.size() < 2) {
    throw std::invalid_argument("DenseNet needs at least two layer sizes");
  }
  for (int s : layer_sizes_) {
    if (s < 1) throw std::invalid_argument("DenseNet layer sizes must be >= 1");
  }
  weight_off_.resize(num_layers());
  bias_off_.resize(num_layers());
  std::size_t off = 0;
  for (int l = 0; l < num_layers(); ++l) {
    weight_off_[l] = off;
    off += static_cast<std::size_t>(layer_sizes_[l]) * layer_sizes_[l + 1];
    bias_off_[l] = off;
    off += static_cast<std::size_t>(layer_sizes_[l + 1]);
  }
  if (params_.empty()) {
    params_.assign(off, 0.0);
  } else if (params_.size() != off) {
    throw std::invalid_argument("DenseNet: parameter vector has wrong length");
  }
}

DenseNet::DenseNet(std::vector<int> layer_sizes, Activation output_activation,
                   Rng& init_rng)
    : layer_sizes_(std::move(layer_sizes)), output_activation_(output_activation) {
  build_offsets();
  // Kaiming-style uniform fan-in init, biases zero.
  for (int l = 0; l < num_layers(); ++l) {
    const double bound = std::sqrt(6.0 / layer_sizes_[l]);
    const std::size_t n =
        static_cast<std::size_t>(layer_sizes_[l]) * layer_sizes_[l + 1];
    for (std::size_t i = 0; i < n; ++i) {
      params_[weight_off_[l] + i] = init_rng.uniform(-bound, bound);
    }
  }
}

DenseNet::DenseNet(std::vector<int> layer_sizes, Activation output_activation,
                   std::vector<double> params)
    : layer_sizes_(std::move(layer_sizes)),
      output_activation_(output_activation),
      params_(std::move(params)) {
  build_offsets();
}

std::vector<double> DenseNet::forward(std::span<const double> input, Tape* tape) const {
  return forward_batch(input, 1, tape);
}

std::vector<double> DenseNet::forward_batch(std::span<const double> inputs, int batch,
                                            Tape* tape) const {
  if (batch < 1) throw std::invalid_argument("forward_batch: batch must be >= 1");
  const int in_dim = layer_sizes_.front();
  if (inputs.size() != static_cast<std::size_t>(batch) * in_dim) {
    throw std::invalid_argument("forward_batch: input has wrong length (expected " +
                                std::to_string(batch) + " x " +
                                std::to_string(in_dim) + ")");
  }
  if (tape) {
    tape->batch = batch;
    tape->consumed = false;
    tape->acts.assign(num_layers(), {});
    tape->pre.assign(num_layers(), {});
  }
  std::vector<double> cur(inputs.begin(), inputs.end());
  for (int l = 0; l < num_layers(); ++l) {
    const int n_in = layer_sizes_[l];
    const int n_out = layer_sizes_[l + 1];
    const double* W = &params_[weight_off_[l]];
    const double* bias = &params_[bias_off_[l]];
    if (tape) tape->acts[l] = cur;

    std::vector<double> z(static_cast<std::size_t>(batch) * n_out);
#pragma omp parallel for schedule(static) if (batch >= 64)
    for (int s = 0; s < batch; ++s) {
      const double* x = &cur[static_cast<std::size_t>(s) * n_in];
      double* y = &z[static_cast<std::size_t>(s) * n_out];
      std::memcpy(y, bias, static_cast<std::size_t>(n_out) * sizeof(double));
      for (int i = 0; i < n_in; ++i) {
        const double xi = x[i];
        const double* w = &W[static_cast<std::size_t>(i) * n_out];
        for (int o = 0; o < n_out; ++o) y[o] += xi * w[o];
      }
    }
    if (tape) tape->pre[l] = z;
    const Activation act = layer_activation(l);
    if (act != Activation::linear) {
      for (double& v : z) v = activate(v, act);
    }
    cur = std::move(z);
  }
  return cur;
}

DenseNet::Gradients DenseNet::backward(Tape& tape,
                                       std::span<const double> upstream) const {
  if (tape.consumed) {
    throw std::logic_error("DenseNet::backward: tape already consumed");
  }
  if (static_cast<int>(tape.acts.size()) != num_layers()) {
    throw std::logic_error("DenseNet::backward: tape does not match this net");
  }
  const int batch = tape.batch;
  if (upstream.size() != static_cast<std::size_t>(batch) * output_dim()) {
    throw std::invalid_argument("backward: upstream has wrong length");
  }
  tape.consumed = true;

  Gradients grads;
  grads.params.assign(params_.size(), 0.0);

  std::vector<double> delta(upstream.begin(), upstream.end());
  for (int l = num_layers() - 1; l >= 0; --l) {
    const int n_in = layer_sizes_[l];
    const int n_out = layer_sizes_[l + 1];
    const std::vector<double>& pre = tape.pre[l];
    const std::vector<double>& act_in = tape.acts[l];
    const Activation act = layer_activation(l);

    if (act != Activation::linear) {
      for (std::size_t i = 0; i < delta.size(); ++i) {
        delta[i] *= activate_grad(pre[i], act);
      }
    }

    double* dB = &grads.params[bias_off_[l]];
    for (int s = 0; s < batch; ++s) {
      const double* d = &delta[static_cast<std::size_t>(s) * n_out];
      for (int o = 0; o < n_out; ++o) dB[o] += d[o];
    }

    // dW[i][o] = sum_s a[s][i] * delta[s][o]; per row the sample order is
    // fixed, so parallelizing over rows stays deterministic.
    double* dW = &grads.params[weight_off_[l]];
#pragma omp parallel for schedule(static) if (n_in >= 256)
    for (int i = 0; i < n_in; ++i) {
      double* dw = &dW[static_cast<std::size_t>(i) * n_out];
      for (int s = 0; s < batch; ++s) {
        const double ai = act_in[static_cast<std::size_t>(s) * n_in + i];
        if (ai == 0.0) continue;
        const double* d = &delta[static_cast<std::size_t>(s) * n_out];
        for (int o = 0; o < n_out; ++o) dw[o] += ai * d[o];
      }
    }

    const double* W = &params_[weight_off_[l]];
    std::vector<double> dprev(static_cast<std::size_t>(batch) * n_in);
#pragma omp parallel for schedule(static) if (batch >= 64)
    for (int s = 0; s < batch; ++s) {
      const double* d = &delta[static_cast<std::size_t>(s) * n_out];
      double* dp = &dprev[static_cast<std::size_t>(s) * n_in];
      for (int i = 0; i < n_in; ++i) {
        const double* w = &W[static_cast<std::size_t>(i) * n_out];
        double acc = 0.0;
        for (int o = 0; o < n_out; ++o) acc += w[o] * d[o];
        dp[i] = acc;
      }
    }
    delta = std::move(dprev);
  }
  grads.inputs = std::move(delta);
  return grads;
}

}  // namespace hqrl::nn
