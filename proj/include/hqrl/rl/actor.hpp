#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hqrl/nn/dense_net.hpp"
#include "hqrl/nn/optim.hpp"
#include "hqrl/pqc/layer.hpp"
#include "hqrl/rng.hpp"
#include "hqrl/surrogate/qtdnn.hpp"

namespace hqrl::rl {

enum class MiddleVariant { pqc, fc, rbg, zero };

std::string middle_variant_name(MiddleVariant v);
MiddleVariant middle_variant_from_name(const std::string& name);

// The swappable middle block T. Every variant maps the (2N+2)M control vector
// to an N-vector; only the PQC variant consumes quantum shots.
struct MiddleBlock {
  MiddleVariant variant = MiddleVariant::zero;
  pqc::PqcConfig pqc_config;
  surrogate::SurrogateConfig surrogate_config;
  // pqc variant: surrogate net, its optimizer, and the (q_i, q_o) ring
  nn::DenseNet qtdnn;
  nn::AdamState qtdnn_opt;
  surrogate::QtBuffer qt_buffer{0, 0, 0};
  // fc variant: trainable dense block of matching width
  nn::DenseNet fc;
};

MiddleBlock make_middle_block(MiddleVariant variant, const pqc::PqcConfig& pqc_config,
                              const surrogate::SurrogateConfig& surrogate_config,
                              double lr, Rng& init_rng);

struct ActorSettings {
  int obs_dim = 0;
  int act_dim = 0;
  double action_low = -1.0;
  double action_high = 1.0;
  int hidden = 256;
  int clink_dim = 10;

  double action_mid() const { return 0.5 * (action_low + action_high); }
  double action_half_range() const { return 0.5 * (action_high - action_low); }
};

// PreDNN -> middle block -> PostDNN with a c-link bypass: the trailing
// clink_dim PreDNN outputs skip the middle block and feed PostDNN directly.
struct HybridActor {
  ActorSettings settings;
  nn::DenseNet pre;   // [obs, hidden, I + clink]
  nn::DenseNet post;  // [N + clink, hidden, act], tanh output scaled to bounds
  MiddleBlock middle;
};

HybridActor make_actor(const ActorSettings& settings, MiddleVariant variant,
                       const pqc::PqcConfig& pqc_config,
                       const surrogate::SurrogateConfig& surrogate_config, double lr,
                       Rng& init_rng);

struct ActorOutput {
  std::vector<double> action;
  pqc::ControlVector q_i;     // empty for classical middle blocks
  std::vector<double> q_o;    // likewise
};

// Exploration/inference path: the middle block runs for real. Only the PQC
// variant touches the counter.
ActorOutput actor_forward_real(HybridActor& actor, std::span<const double> obs,
                               Rng& rng, pqc::CallCounter& counter);

// Batched update path with the PQC replaced by the frozen surrogate.
struct ActorBatchPass {
  int batch = 0;
  const nn::DenseNet* pre_net = nullptr;
  const nn::DenseNet* post_net = nullptr;
  const nn::DenseNet* mid_net = nullptr;  // qtdnn or fc; null when not differentiable
  const MiddleBlock* middle = nullptr;
  const ActorSettings* settings = nullptr;

  nn::Tape pre_tape, mid_tape, post_tape;
  std::vector<double> encode_grad;  // batch x I, d(encoded)/d(raw)
  std::vector<double> actions;      // batch x act
};

// `pre_net`/`post_net`/`fc_override` let target copies reuse the same path;
// pass nullptr for fc_override to use the online fc block.
ActorBatchPass actor_forward_surrogate_batch(const nn::DenseNet& pre_net,
                                             const nn::DenseNet& post_net,
                                             const MiddleBlock& middle,
                                             const nn::DenseNet* fc_override,
                                             const ActorSettings& settings,
                                             std::span<const double> obs, int batch,
                                             Rng& rng);

struct ActorGradients {
  std::vector<double> pre;
  std::vector<double> post;
  std::vector<double> fc;  // empty unless the middle block is the fc variant
};

// Backprop from dLoss/dAction through post -> middle surrogate -> encoding ->
// pre. The surrogate's own parameters receive no update here.
ActorGradients actor_backward(ActorBatchPass& pass, std::span<const double> upstream);

}  // namespace hqrl::rl
