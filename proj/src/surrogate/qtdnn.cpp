#include "hqrl/surrogate/qtdnn.hpp"

#include <cmath>
#include <stdexcept>

#include "hqrl/grad/oracles.hpp"
#include "hqrl/nn/losses.hpp"

namespace hqrl::surrogate {

QtBuffer::QtBuffer(std::size_t capacity, int control_dim, int num_qubits)
    : capacity_(capacity), control_dim_(control_dim), num_qubits_(num_qubits) {
  store_.resize(capacity_);
}

void QtBuffer::record_pair(const pqc::ControlVector& q_i,
                           std::span<const double> q_o) {
  if (q_i.size() != control_dim_) {
    throw std::invalid_argument("record_pair: control vector has wrong length");
  }
  if (static_cast<int>(q_o.size()) != num_qubits_) {
    throw std::invalid_argument("record_pair: output vector has wrong length");
  }
  if (capacity_ == 0) return;
  store_[head_] = QtPair{q_i, std::vector<double>(q_o.begin(), q_o.end())};
  head_ = (head_ + 1) % capacity_;
  if (size_ < capacity_) ++size_;
}

const QtPair& QtBuffer::at(std::size_t i) const {
  if (i >= size_) throw std::out_of_range("QtBuffer::at: index out of range");
  const std::size_t start = (head_ + capacity_ - size_) % capacity_;
  return store_[(start + i) % capacity_];
}

void SurrogateConfig::validate() const {
  if (hidden_width < 1) throw std::invalid_argument("surrogate: hidden_width >= 1");
  if (tiny_batches < 0) throw std::invalid_argument("surrogate: tiny_batches >= 0");
  if (tiny_batch_size < 1) throw std::invalid_argument("surrogate: tiny_batch_size >= 1");
  if (!(batch_mix >= 0.0 && batch_mix <= 1.0)) {
    throw std::invalid_argument("surrogate: batch_mix must lie in [0, 1]");
  }
}

nn::DenseNet make_qtdnn(const pqc::PqcConfig& config, int hidden_width,
                        Rng& init_rng) {
  return nn::DenseNet({config.control_dim(), hidden_width, config.num_qubits},
                      nn::Activation::sigmoid, init_rng);
}

std::uint64_t surrogate_param_count(int num_qubits, int num_layers,
                                    int hidden_width) {
  if (num_qubits < 1 || num_layers < 1 || hidden_width < 1) {
    throw std::invalid_argument("surrogate_param_count: args must be positive");
  }
  const std::uint64_t n = static_cast<std::uint64_t>(num_qubits);
  const std::uint64_t h = static_cast<std::uint64_t>(hidden_width);
  const std::uint64_t inputs =
      (2 * n + 2) * static_cast<std::uint64_t>(num_layers);
  return inputs * h + h + h * n + n;
}

std::vector<double> fit_surrogate(nn::DenseNet& qtdnn, std::span<const QtPair> batch,
                                  const QtBuffer& buffer, const SurrogateConfig& config,
                                  nn::AdamState& optimizer, Rng& rng) {
  config.validate();
  if (batch.empty()) throw std::invalid_argument("fit_surrogate: empty batch");
  const int in_dim = qtdnn.input_dim();
  const int out_dim = qtdnn.output_dim();
  const int tb = config.tiny_batch_size;

  std::vector<double> trace;
  trace.reserve(static_cast<std::size_t>(config.tiny_batches));
  std::vector<double> inputs(static_cast<std::size_t>(tb) * in_dim);
  std::vector<double> targets(static_cast<std::size_t>(tb) * out_dim);

  for (int step = 0; step < config.tiny_batches; ++step) {
    for (int row = 0; row < tb; ++row) {
      const bool from_batch =
          buffer.size() == 0 || rng.uniform() < config.batch_mix;
      const QtPair& pair = from_batch ? batch[rng.uniform_index(batch.size())]
                                      : buffer.at(rng.uniform_index(buffer.size()));
      if (pair.q_i.size() != in_dim ||
          static_cast<int>(pair.q_o.size()) != out_dim) {
        throw std::invalid_argument("fit_surrogate: pair does not match surrogate dims");
      }
      std::copy(pair.q_i.values.begin(), pair.q_i.values.end(),
                inputs.begin() + static_cast<std::size_t>(row) * in_dim);
      std::copy(pair.q_o.begin(), pair.q_o.end(),
                targets.begin() + static_cast<std::size_t>(row) * out_dim);
    }
    nn::Tape tape;
    const std::vector<double> preds = qtdnn.forward_batch(inputs, tb, &tape);
    const nn::LossResult loss = nn::bce_loss(preds, targets);
    trace.push_back(loss.value);
    const nn::DenseNet::Gradients grads = qtdnn.backward(tape, loss.grad);
    nn::adam_step(qtdnn.params(), grads.params, optimizer);
  }
  return trace;
}

std::vector<double> surrogate_angle_jacobian(const nn::DenseNet& qtdnn,
                                             const pqc::ControlVector& x,
                                             const pqc::PqcConfig& config) {
  const int n_out = config.num_qubits;
  const int n_in = config.control_dim();
  const int n_angles = config.angle_dim();
  // One batched pass: replicate the probe N times and push one-hot upstreams,
  // so row k of the input gradient is the Jacobian row of output k.
  std::vector<double> rep(static_cast<std::size_t>(n_out) * n_in);
  for (int r = 0; r < n_out; ++r) {
    std::copy(x.values.begin(), x.values.end(),
              rep.begin() + static_cast<std::size_t>(r) * n_in);
  }
  nn::Tape tape;
  qtdnn.forward_batch(rep, n_out, &tape);
  std::vector<double> upstream(static_cast<std::size_t>(n_out) * n_out, 0.0);
  for (int r = 0; r < n_out; ++r) {
    upstream[static_cast<std::size_t>(r) * n_out + r] = 1.0;
  }
  const nn::DenseNet::Gradients grads = qtdnn.backward(tape, upstream);
  std::vector<double> jac(static_cast<std::size_t>(n_out) * n_angles);
  for (int r = 0; r < n_out; ++r) {
    for (int c = 0; c < n_angles; ++c) {
      jac[static_cast<std::size_t>(r) * n_angles + c] =
          grads.inputs[static_cast<std::size_t>(r) * n_in + c];
    }
  }
  return jac;
}

FidelityReport fidelity_report(const nn::DenseNet& qtdnn, const pqc::PqcConfig& config,
                               const pqc::ControlVector& center, double radius,
                               int num_probes, Rng& rng) {
  if (num_probes < 1) {
    throw std::invalid_argument("fidelity_report: probe count must be >= 1");
  }
  if (center.size() != config.control_dim() ||
      qtdnn.input_dim() != config.control_dim()) {
    throw std::invalid_argument("fidelity_report: dimension mismatch");
  }
  const int n_angles = config.angle_dim();

  FidelityReport report;
  report.radius = radius;
  report.probes = num_probes;
  report.center = center.values;

  for (int probe = 0; probe < num_probes; ++probe) {
    pqc::ControlVector x = center;
    if (radius > 0.0) {
      // Uniform in the angle-subspace ball: Gaussian direction, radial cdf.
      std::vector<double> dir(static_cast<std::size_t>(n_angles));
      double norm_sq = 0.0;
      for (double& d : dir) {
        d = rng.normal();
        norm_sq += d * d;
      }
      const double norm = std::sqrt(norm_sq);
      const double scale =
          norm > 0.0
              ? radius * std::pow(rng.uniform(), 1.0 / n_angles) / norm
              : 0.0;
      for (int j = 0; j < n_angles; ++j) {
        x.values[static_cast<std::size_t>(j)] += dir[static_cast<std::size_t>(j)] * scale;
      }
    }

    const pqc::MarginalVector exact = pqc::exact_layer_map(x, config);
    const std::vector<double> pred = qtdnn.forward(x.values);
    double gap_sq = 0.0;
    for (int k = 0; k < config.num_qubits; ++k) {
      const double e = pred[static_cast<std::size_t>(k)] - exact[static_cast<std::size_t>(k)];
      gap_sq += e * e;
    }
    report.eps1 = std::max(report.eps1, std::sqrt(gap_sq));

    const std::vector<double> surr_jac = surrogate_angle_jacobian(qtdnn, x, config);
    const grad::Jacobian oracle = grad::parameter_shift_jacobian(x, config);
    double fro_sq = 0.0;
    for (std::size_t i = 0; i < surr_jac.size(); ++i) {
      const double e = surr_jac[i] - oracle.data[i];
      fro_sq += e * e;
    }
    report.eps2 = std::max(report.eps2, std::sqrt(fro_sq));
  }
  return report;
}

nlohmann::json FidelityReport::to_json() const {
  return nlohmann::json{{"eps1", eps1},
                        {"eps2", eps2},
                        {"radius", radius},
                        {"probes", probes},
                        {"center", center}};
}

}  // namespace hqrl::surrogate
