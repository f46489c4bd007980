#include "hqrl/rl/actor.hpp"

#include <cmath>
#include <stdexcept>

namespace hqrl::rl {

std::string middle_variant_name(MiddleVariant v) {
  switch (v) {
    case MiddleVariant::pqc: return "pqc";
    case MiddleVariant::fc: return "fc";
    case MiddleVariant::rbg: return "rbg";
    case MiddleVariant::zero: return "zero";
  }
  return "zero";
}

MiddleVariant middle_variant_from_name(const std::string& name) {
  if (name == "pqc") return MiddleVariant::pqc;
  if (name == "fc") return MiddleVariant::fc;
  if (name == "rbg") return MiddleVariant::rbg;
  if (name == "zero" || name == "0l") return MiddleVariant::zero;
  throw std::invalid_argument("unknown middle-block variant: " + name);
}

MiddleBlock make_middle_block(MiddleVariant variant, const pqc::PqcConfig& pqc_config,
                              const surrogate::SurrogateConfig& surrogate_config,
                              double lr, Rng& init_rng) {
  pqc_config.validate();
  surrogate_config.validate();
  MiddleBlock block;
  block.variant = variant;
  block.pqc_config = pqc_config;
  block.surrogate_config = surrogate_config;
  switch (variant) {
    case MiddleVariant::pqc: {
      block.qtdnn =
          surrogate::make_qtdnn(pqc_config, surrogate_config.hidden_width, init_rng);
      nn::AdamConfig opt;
      opt.lr = lr;
      block.qtdnn_opt = nn::AdamState(block.qtdnn.param_count(), opt);
      block.qt_buffer =
          surrogate::QtBuffer(surrogate_config.buffer_capacity,
                              pqc_config.control_dim(), pqc_config.num_qubits);
      break;
    }
    case MiddleVariant::fc:
      // Same topology and activations as the surrogate it stands in for.
      block.fc =
          surrogate::make_qtdnn(pqc_config, surrogate_config.hidden_width, init_rng);
      break;
    case MiddleVariant::rbg:
    case MiddleVariant::zero:
      break;
  }
  return block;
}

HybridActor make_actor(const ActorSettings& settings, MiddleVariant variant,
                       const pqc::PqcConfig& pqc_config,
                       const surrogate::SurrogateConfig& surrogate_config, double lr,
                       Rng& init_rng) {
  if (settings.obs_dim < 1 || settings.act_dim < 1) {
    throw std::invalid_argument("actor: obs/act dims must be >= 1");
  }
  if (settings.clink_dim < 0) throw std::invalid_argument("actor: clink_dim < 0");
  HybridActor actor;
  actor.settings = settings;
  const int controls = pqc_config.control_dim();
  actor.pre = nn::DenseNet(
      {settings.obs_dim, settings.hidden, controls + settings.clink_dim},
      nn::Activation::linear, init_rng);
  actor.post = nn::DenseNet(
      {pqc_config.num_qubits + settings.clink_dim, settings.hidden, settings.act_dim},
      nn::Activation::tanh, init_rng);
  actor.middle =
      make_middle_block(variant, pqc_config, surrogate_config, lr, init_rng);
  return actor;
}

namespace {

std::vector<double> middle_forward_real(MiddleBlock& middle,
                                        const pqc::ControlVector& q_i, Rng& rng,
                                        pqc::CallCounter& counter) {
  switch (middle.variant) {
    case MiddleVariant::pqc:
      return pqc::run_quantum_layer(q_i, middle.pqc_config, rng, counter);
    case MiddleVariant::fc:
      return middle.fc.forward(q_i.values);
    case MiddleVariant::rbg: {
      std::vector<double> bits(static_cast<std::size_t>(middle.pqc_config.num_qubits));
      for (double& b : bits) b = rng.bernoulli(0.5) ? 1.0 : 0.0;
      return bits;
    }
    case MiddleVariant::zero:
      return std::vector<double>(static_cast<std::size_t>(middle.pqc_config.num_qubits),
                                 0.0);
  }
  return {};
}

}  // namespace

ActorOutput actor_forward_real(HybridActor& actor, std::span<const double> obs,
                               Rng& rng, pqc::CallCounter& counter) {
  const ActorSettings& s = actor.settings;
  const int controls = actor.middle.pqc_config.control_dim();
  const std::vector<double> pre_out = actor.pre.forward(obs);

  const pqc::ControlVector q_i = pqc::encode_controls(
      std::span<const double>(pre_out).first(static_cast<std::size_t>(controls)),
      actor.middle.pqc_config);
  const std::vector<double> q_o = middle_forward_real(actor.middle, q_i, rng, counter);

  std::vector<double> post_in(q_o);
  post_in.insert(post_in.end(), pre_out.begin() + controls, pre_out.end());
  const std::vector<double> raw_action = actor.post.forward(post_in);

  ActorOutput out;
  out.action.resize(static_cast<std::size_t>(s.act_dim));
  for (int a = 0; a < s.act_dim; ++a) {
    out.action[static_cast<std::size_t>(a)] =
        s.action_mid() + s.action_half_range() * raw_action[static_cast<std::size_t>(a)];
  }
  if (actor.middle.variant == MiddleVariant::pqc) {
    out.q_i = q_i;
    out.q_o = q_o;
  }
  return out;
}

ActorBatchPass actor_forward_surrogate_batch(const nn::DenseNet& pre_net,
                                             const nn::DenseNet& post_net,
                                             const MiddleBlock& middle,
                                             const nn::DenseNet* fc_override,
                                             const ActorSettings& settings,
                                             std::span<const double> obs, int batch,
                                             Rng& rng) {
  ActorBatchPass pass;
  pass.batch = batch;
  pass.pre_net = &pre_net;
  pass.post_net = &post_net;
  pass.middle = &middle;
  pass.settings = &settings;

  const int controls = middle.pqc_config.control_dim();
  const int angles = middle.pqc_config.angle_dim();
  const int n_qubits = middle.pqc_config.num_qubits;
  const int clink = settings.clink_dim;

  const std::vector<double> pre_out = pre_net.forward_batch(obs, batch, &pass.pre_tape);

  // Encode controls: pi*tanh on angle entries, passthrough on index entries.
  std::vector<double> encoded(static_cast<std::size_t>(batch) * controls);
  pass.encode_grad.assign(encoded.size(), 1.0);
  std::vector<double> clink_vals(static_cast<std::size_t>(batch) * clink);
  for (int s = 0; s < batch; ++s) {
    const double* z = &pre_out[static_cast<std::size_t>(s) * (controls + clink)];
    double* e = &encoded[static_cast<std::size_t>(s) * controls];
    double* g = &pass.encode_grad[static_cast<std::size_t>(s) * controls];
    for (int j = 0; j < angles; ++j) {
      const double t = std::tanh(z[j]);
      e[j] = M_PI * t;
      g[j] = M_PI * (1.0 - t * t);
    }
    for (int j = angles; j < controls; ++j) e[j] = z[j];
    for (int j = 0; j < clink; ++j) {
      clink_vals[static_cast<std::size_t>(s) * clink + j] = z[controls + j];
    }
  }

  // Middle block in surrogate mode: differentiable nets where they exist.
  std::vector<double> mid_out;
  switch (middle.variant) {
    case MiddleVariant::pqc:
      pass.mid_net = &middle.qtdnn;
      mid_out = middle.qtdnn.forward_batch(encoded, batch, &pass.mid_tape);
      break;
    case MiddleVariant::fc:
      pass.mid_net = fc_override ? fc_override : &middle.fc;
      mid_out = pass.mid_net->forward_batch(encoded, batch, &pass.mid_tape);
      break;
    case MiddleVariant::rbg:
      mid_out.resize(static_cast<std::size_t>(batch) * n_qubits);
      for (double& b : mid_out) b = rng.bernoulli(0.5) ? 1.0 : 0.0;
      break;
    case MiddleVariant::zero:
      mid_out.assign(static_cast<std::size_t>(batch) * n_qubits, 0.0);
      break;
  }

  std::vector<double> post_in(static_cast<std::size_t>(batch) * (n_qubits + clink));
  for (int s = 0; s < batch; ++s) {
    double* row = &post_in[static_cast<std::size_t>(s) * (n_qubits + clink)];
    for (int q = 0; q < n_qubits; ++q) {
      row[q] = mid_out[static_cast<std::size_t>(s) * n_qubits + q];
    }
    for (int j = 0; j < clink; ++j) {
      row[n_qubits + j] = clink_vals[static_cast<std::size_t>(s) * clink + j];
    }
  }
  const std::vector<double> raw =
      post_net.forward_batch(post_in, batch, &pass.post_tape);

  pass.actions.resize(static_cast<std::size_t>(batch) * settings.act_dim);
  for (std::size_t i = 0; i < pass.actions.size(); ++i) {
    pass.actions[i] = settings.action_mid() + settings.action_half_range() * raw[i];
  }
  return pass;
}

ActorGradients actor_backward(ActorBatchPass& pass, std::span<const double> upstream) {
  const ActorSettings& s = *pass.settings;
  const MiddleBlock& middle = *pass.middle;
  const int batch = pass.batch;
  const int controls = middle.pqc_config.control_dim();
  const int n_qubits = middle.pqc_config.num_qubits;
  const int clink = s.clink_dim;
  if (upstream.size() != static_cast<std::size_t>(batch) * s.act_dim) {
    throw std::invalid_argument("actor_backward: upstream has wrong length");
  }

  std::vector<double> post_up(upstream.begin(), upstream.end());
  for (double& v : post_up) v *= s.action_half_range();

  nn::DenseNet::Gradients post_grads = pass.post_net->backward(pass.post_tape, post_up);

  // Split post input grads into middle output and c-link parts.
  std::vector<double> d_mid(static_cast<std::size_t>(batch) * n_qubits);
  std::vector<double> d_clink(static_cast<std::size_t>(batch) * clink);
  for (int b = 0; b < batch; ++b) {
    const double* row = &post_grads.inputs[static_cast<std::size_t>(b) * (n_qubits + clink)];
    for (int q = 0; q < n_qubits; ++q) d_mid[static_cast<std::size_t>(b) * n_qubits + q] = row[q];
    for (int j = 0; j < clink; ++j) d_clink[static_cast<std::size_t>(b) * clink + j] = row[n_qubits + j];
  }

  ActorGradients out;
  std::vector<double> d_encoded(static_cast<std::size_t>(batch) * controls, 0.0);
  if (pass.mid_net != nullptr) {
    nn::DenseNet::Gradients mid_grads = pass.mid_net->backward(pass.mid_tape, d_mid);
    d_encoded = std::move(mid_grads.inputs);
    if (middle.variant == MiddleVariant::fc) out.fc = std::move(mid_grads.params);
    // pqc variant: the frozen surrogate's own parameter grads are dropped.
  }

  // Chain through the control encoding back onto the PreDNN outputs.
  std::vector<double> pre_up(static_cast<std::size_t>(batch) * (controls + clink));
  for (int b = 0; b < batch; ++b) {
    double* row = &pre_up[static_cast<std::size_t>(b) * (controls + clink)];
    const double* de = &d_encoded[static_cast<std::size_t>(b) * controls];
    const double* eg = &pass.encode_grad[static_cast<std::size_t>(b) * controls];
    for (int j = 0; j < controls; ++j) row[j] = de[j] * eg[j];
    for (int j = 0; j < clink; ++j) {
      row[controls + j] = d_clink[static_cast<std::size_t>(b) * clink + j];
    }
  }
  nn::DenseNet::Gradients pre_grads = pass.pre_net->backward(pass.pre_tape, pre_up);

  out.pre = std::move(pre_grads.params);
  out.post = std::move(post_grads.params);
  return out;
}

}  // namespace hqrl::rl
