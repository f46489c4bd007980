#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "hqrl/rl/actor.hpp"
#include "hqrl/rl/critic.hpp"
#include "hqrl/rl/env.hpp"
#include "hqrl/rl/metrics.hpp"
#include "hqrl/rl/replay.hpp"

namespace hqrl::rl {

struct AgentConfig {
  double gamma = 0.99;
  double tau = 5e-3;
  double lr = 3e-4;                  // all networks
  int batch_size = 256;              // N_b
  int actor_delay = 2;               // N_A
  double exploration_noise = 5e-2;   // stddev as a fraction of the action range
  double target_noise = 0.1;         // sigma', fraction of the action range
  double target_noise_clip = 0.25;   // c, fraction of the action range
  int warmup_steps = 1000;           // uniform-random actions before updates
  std::size_t replay_capacity = 1000000;
  int actor_hidden = 256;
  int critic_hidden = 256;
  int clink_dim = 10;

  void validate() const;
};

struct EvalResult {
  double mean_return = 0.0;
  double std_return = 0.0;
  int episodes = 0;
};

// Snapshot of one surrogate fit, kept for offline fidelity probing.
struct FitSnapshot {
  long long step = 0;
  std::vector<double> center;  // batch mean of q_i
  double radius = 0.0;         // max angle-subspace distance from the center
  double bce = 0.0;            // mean loss over the fit's tiny-batches
};

// Twin-delayed actor-critic with a swappable quantum/classical middle block.
// During updates the quantum layer is never executed: target actions, critic
// targets and actor gradients all flow through the frozen surrogate.
class Agent {
 public:
  Agent(AgentConfig config, pqc::PqcConfig pqc_config, MiddleVariant variant,
        surrogate::SurrogateConfig surrogate_config, std::unique_ptr<Env> env,
        std::uint64_t seed);

  void train(long long total_steps, int eval_interval, int eval_episodes,
             long long checkpoint_interval, const std::string& checkpoint_prefix,
             MetricsStream* metrics);

  // Deterministic policy, real middle block, fixed episode-seed suite.
  EvalResult evaluate(int episodes);

  void save_checkpoint(const std::string& path) const;
  static Agent load_checkpoint(const std::string& path);
  nlohmann::json checkpoint_json() const;

  const pqc::CallCounter& train_counter() const { return train_counter_; }
  const pqc::CallCounter& eval_counter() const { return eval_counter_; }
  long long steps() const { return step_; }
  long long episodes() const { return episode_; }
  long long updates() const { return updates_; }
  long long actor_updates() const { return actor_updates_; }
  HybridActor& actor() { return actor_; }
  const HybridActor& actor() const { return actor_; }
  Critic& critic(int i) { return i == 0 ? critic0_ : critic1_; }
  const nn::DenseNet& pre_target() const { return pre_target_; }
  const nn::DenseNet& post_target() const { return post_target_; }
  const Critic& critic_target(int i) const { return i == 0 ? critic0_t_ : critic1_t_; }
  const ReplayBuffer& replay() const { return replay_; }
  const std::deque<FitSnapshot>& fit_history() const { return fit_history_; }
  MiddleVariant variant() const { return variant_; }

  // Exposed for tests.
  void run_update_epoch();
  Env& env() { return *env_; }

 private:
  void explore_step();
  double fit_surrogate_epoch(const std::vector<std::size_t>& batch_idx);
  std::vector<double> target_actions(std::span<const double> next_obs, int batch);

  AgentConfig cfg_;
  pqc::PqcConfig pqc_cfg_;
  MiddleVariant variant_;
  surrogate::SurrogateConfig sur_cfg_;
  std::uint64_t seed_ = 0;

  std::unique_ptr<Env> env_, eval_env_;
  HybridActor actor_;
  nn::DenseNet pre_target_, post_target_, fc_target_;
  Critic critic0_, critic1_, critic0_t_, critic1_t_;

  nn::AdamState opt_pre_, opt_post_, opt_fc_;
  nn::AdamState opt_c0_trunk_, opt_c0_head_, opt_c1_trunk_, opt_c1_head_;

  ReplayBuffer replay_;
  pqc::CallCounter train_counter_, eval_counter_;

  Rng rng_explore_, rng_sample_, rng_pqc_, rng_target_, rng_fit_, rng_middle_;

  long long step_ = 0, episode_ = 0, updates_ = 0, actor_updates_ = 0;
  std::vector<double> obs_;
  int episode_steps_ = 0;
  double wall_ms_base_ = 0.0;

  std::deque<FitSnapshot> fit_history_;
  static constexpr std::size_t kFitHistoryCap = 16;

  // Update epoch internals, shared with train().
  struct EpochStats {
    double critic_loss0 = 0.0, critic_loss1 = 0.0;
    std::optional<double> policy_loss;
    std::optional<double> bce;
  };
  EpochStats last_epoch_;
};

}  // namespace hqrl::rl
