#include "hqrl/rl/agent.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "hqrl/nn/losses.hpp"
#include "hqrl/nn/serialize.hpp"

namespace hqrl::rl {

namespace {

// Stream ids for per-purpose RNGs derived from the master seed.
enum Stream : std::uint64_t {
  kInit = 1,
  kExplore = 2,
  kSample = 3,
  kPqc = 4,
  kTarget = 5,
  kFit = 6,
  kMiddle = 7,
  kEnvEpisodes = 8,
};

// Fixed evaluation suite: every agent is scored on the same initial
// conditions, independent of its training seed.
constexpr std::uint64_t kEvalSuiteSeed = 0xeba15eedull;

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

void AgentConfig::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("agent: gamma in (0,1)");
  if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("agent: tau in (0,1]");
  if (!(lr > 0.0)) throw std::invalid_argument("agent: lr must be > 0");
  if (batch_size < 1) throw std::invalid_argument("agent: batch_size >= 1");
  if (actor_delay < 1) throw std::invalid_argument("agent: actor_delay >= 1");
  if (exploration_noise < 0.0) throw std::invalid_argument("agent: exploration_noise >= 0");
  if (target_noise < 0.0 || target_noise_clip < 0.0) {
    throw std::invalid_argument("agent: target noise parameters must be >= 0");
  }
  if (warmup_steps < 0) throw std::invalid_argument("agent: warmup_steps >= 0");
  if (replay_capacity == 0) throw std::invalid_argument("agent: replay_capacity > 0");
  if (actor_hidden < 1 || critic_hidden < 1) {
    throw std::invalid_argument("agent: hidden widths must be >= 1");
  }
  if (clink_dim < 0) throw std::invalid_argument("agent: clink_dim >= 0");
}

Agent::Agent(AgentConfig config, pqc::PqcConfig pqc_config, MiddleVariant variant,
             surrogate::SurrogateConfig surrogate_config, std::unique_ptr<Env> env,
             std::uint64_t seed)
    : cfg_(config),
      pqc_cfg_(pqc_config),
      variant_(variant),
      sur_cfg_(surrogate_config),
      seed_(seed),
      env_(std::move(env)),
      replay_(config.replay_capacity),
      rng_explore_(derive_seed(seed, kExplore)),
      rng_sample_(derive_seed(seed, kSample)),
      rng_pqc_(derive_seed(seed, kPqc)),
      rng_target_(derive_seed(seed, kTarget)),
      rng_fit_(derive_seed(seed, kFit)),
      rng_middle_(derive_seed(seed, kMiddle)) {
  cfg_.validate();
  pqc_cfg_.validate();
  if (!env_) throw std::invalid_argument("agent: null environment");
  eval_env_ = env_->clone();

  Rng init_rng(derive_seed(seed, kInit));
  ActorSettings settings;
  settings.obs_dim = env_->obs_dim();
  settings.act_dim = env_->act_dim();
  settings.action_low = env_->action_low();
  settings.action_high = env_->action_high();
  settings.hidden = cfg_.actor_hidden;
  settings.clink_dim = cfg_.clink_dim;
  actor_ = make_actor(settings, variant_, pqc_cfg_, sur_cfg_, cfg_.lr, init_rng);
  pre_target_ = actor_.pre;
  post_target_ = actor_.post;
  if (variant_ == MiddleVariant::fc) fc_target_ = actor_.middle.fc;

  critic0_ = Critic(settings.obs_dim, settings.act_dim, cfg_.critic_hidden, init_rng);
  critic1_ = Critic(settings.obs_dim, settings.act_dim, cfg_.critic_hidden, init_rng);
  critic0_t_ = critic0_;
  critic1_t_ = critic1_;

  nn::AdamConfig opt;
  opt.lr = cfg_.lr;
  opt_pre_ = nn::AdamState(actor_.pre.param_count(), opt);
  opt_post_ = nn::AdamState(actor_.post.param_count(), opt);
  if (variant_ == MiddleVariant::fc) {
    opt_fc_ = nn::AdamState(actor_.middle.fc.param_count(), opt);
  }
  opt_c0_trunk_ = nn::AdamState(critic0_.trunk().param_count(), opt);
  opt_c0_head_ = nn::AdamState(critic0_.head().param_count(), opt);
  opt_c1_trunk_ = nn::AdamState(critic1_.trunk().param_count(), opt);
  opt_c1_head_ = nn::AdamState(critic1_.head().param_count(), opt);

  obs_ = env_->reset(derive_seed(seed_, derive_seed(kEnvEpisodes, 0)));
  episode_steps_ = 0;
}

void Agent::explore_step() {
  const int act_dim = env_->act_dim();
  const double range = env_->action_high() - env_->action_low();
  const bool warm = step_ < cfg_.warmup_steps;

  ActorOutput out;
  if (variant_ == MiddleVariant::pqc || !warm) {
    // The PQC variant runs the forward pass from step one so every stored
    // transition carries a (q_i, q_o) pair and the call counter matches the
    // exploration step count exactly.
    out = actor_forward_real(actor_, obs_,
                             variant_ == MiddleVariant::pqc ? rng_pqc_ : rng_middle_,
                             train_counter_);
  } else {
    out.action.assign(static_cast<std::size_t>(act_dim), 0.0);
  }

  std::vector<double> action(static_cast<std::size_t>(act_dim));
  for (int a = 0; a < act_dim; ++a) {
    double v = warm ? rng_explore_.uniform(env_->action_low(), env_->action_high())
                    : out.action[static_cast<std::size_t>(a)] +
                          rng_explore_.normal(0.0, cfg_.exploration_noise * range);
    action[static_cast<std::size_t>(a)] =
        std::clamp(v, env_->action_low(), env_->action_high());
  }

  StepResult sr = env_->step(action);
  ++episode_steps_;

  Transition t;
  t.obs = obs_;
  t.action = action;
  t.q_i = out.q_i;
  t.q_o = out.q_o;
  t.reward = sr.reward;
  t.next_obs = sr.obs;
  t.done = sr.terminal;
  replay_.push(std::move(t));

  if (sr.terminal || sr.truncated) {
    ++episode_;
    obs_ = env_->reset(derive_seed(
        seed_, derive_seed(kEnvEpisodes, static_cast<std::uint64_t>(episode_))));
    episode_steps_ = 0;
  } else {
    obs_ = std::move(sr.obs);
  }
}

double Agent::fit_surrogate_epoch(const std::vector<std::size_t>& batch_idx) {
  std::vector<surrogate::QtPair> pairs;
  pairs.reserve(batch_idx.size());
  for (const std::size_t i : batch_idx) {
    const Transition& t = replay_.at(i);
    actor_.middle.qt_buffer.record_pair(t.q_i, t.q_o);
    pairs.push_back({t.q_i, t.q_o});
  }
  const std::vector<double> trace =
      surrogate::fit_surrogate(actor_.middle.qtdnn, pairs, actor_.middle.qt_buffer,
                               sur_cfg_, actor_.middle.qtdnn_opt, rng_fit_);
  double mean_bce = 0.0;
  for (const double v : trace) mean_bce += v;
  if (!trace.empty()) mean_bce /= static_cast<double>(trace.size());

  // Fit snapshot: batch center and angle-subspace radius.
  FitSnapshot snap;
  snap.step = step_;
  snap.bce = mean_bce;
  const int dim = pqc_cfg_.control_dim();
  const int angles = pqc_cfg_.angle_dim();
  snap.center.assign(static_cast<std::size_t>(dim), 0.0);
  for (const auto& p : pairs) {
    for (int j = 0; j < dim; ++j) {
      snap.center[static_cast<std::size_t>(j)] += p.q_i.values[static_cast<std::size_t>(j)];
    }
  }
  for (double& c : snap.center) c /= static_cast<double>(pairs.size());
  for (const auto& p : pairs) {
    double d_sq = 0.0;
    for (int j = 0; j < angles; ++j) {
      const double d = p.q_i.values[static_cast<std::size_t>(j)] -
                       snap.center[static_cast<std::size_t>(j)];
      d_sq += d * d;
    }
    snap.radius = std::max(snap.radius, std::sqrt(d_sq));
  }
  fit_history_.push_back(std::move(snap));
  if (fit_history_.size() > kFitHistoryCap) fit_history_.pop_front();
  return mean_bce;
}

std::vector<double> Agent::target_actions(std::span<const double> next_obs, int batch) {
  ActorBatchPass pass = actor_forward_surrogate_batch(
      pre_target_, post_target_, actor_.middle,
      variant_ == MiddleVariant::fc ? &fc_target_ : nullptr, actor_.settings,
      next_obs, batch, rng_middle_);
  const double range = env_->action_high() - env_->action_low();
  const double noise_std = cfg_.target_noise * range;
  const double clip = cfg_.target_noise_clip * range;
  std::vector<double> actions = std::move(pass.actions);
  for (double& a : actions) {
    const double eps = std::clamp(rng_target_.normal(0.0, noise_std), -clip, clip);
    a = std::clamp(a + eps, env_->action_low(), env_->action_high());
  }
  return actions;
}

void Agent::run_update_epoch() {
  const int batch = cfg_.batch_size;
  const std::vector<std::size_t> idx = replay_.sample_indices(batch, rng_sample_);

  last_epoch_ = EpochStats{};
  if (variant_ == MiddleVariant::pqc) {
    const double bce = fit_surrogate_epoch(idx);
    if (sur_cfg_.tiny_batches > 0) last_epoch_.bce = bce;
  }

  const int obs_dim = env_->obs_dim();
  const int act_dim = env_->act_dim();
  std::vector<double> obs(static_cast<std::size_t>(batch) * obs_dim);
  std::vector<double> act(static_cast<std::size_t>(batch) * act_dim);
  std::vector<double> next_obs(static_cast<std::size_t>(batch) * obs_dim);
  std::vector<double> reward(static_cast<std::size_t>(batch));
  std::vector<double> not_done(static_cast<std::size_t>(batch));
  for (int b = 0; b < batch; ++b) {
    const Transition& t = replay_.at(idx[static_cast<std::size_t>(b)]);
    std::copy(t.obs.begin(), t.obs.end(), obs.begin() + static_cast<std::size_t>(b) * obs_dim);
    std::copy(t.action.begin(), t.action.end(),
              act.begin() + static_cast<std::size_t>(b) * act_dim);
    std::copy(t.next_obs.begin(), t.next_obs.end(),
              next_obs.begin() + static_cast<std::size_t>(b) * obs_dim);
    reward[static_cast<std::size_t>(b)] = t.reward;
    not_done[static_cast<std::size_t>(b)] = t.done ? 0.0 : 1.0;
  }

  // Bootstrap targets through the frozen surrogate and twin target critics.
  const std::vector<double> a_tar = target_actions(next_obs, batch);
  const Critic::Pass q0t = critic0_t_.forward_batch(next_obs, a_tar, batch, false);
  const Critic::Pass q1t = critic1_t_.forward_batch(next_obs, a_tar, batch, false);
  std::vector<double> y(static_cast<std::size_t>(batch));
  for (int b = 0; b < batch; ++b) {
    const double qmin = std::min(q0t.values[static_cast<std::size_t>(b)],
                                 q1t.values[static_cast<std::size_t>(b)]);
    y[static_cast<std::size_t>(b)] = reward[static_cast<std::size_t>(b)] +
                                     cfg_.gamma * not_done[static_cast<std::size_t>(b)] * qmin;
  }

  // One Adam step per critic on the shared targets.
  {
    Critic::Pass pass = critic0_.forward_batch(obs, act, batch, true);
    const nn::LossResult loss = nn::mse_loss(pass.values, y);
    last_epoch_.critic_loss0 = loss.value;
    const Critic::Grads grads = critic0_.backward(pass, loss.grad);
    critic0_.apply_gradients(grads, opt_c0_trunk_, opt_c0_head_);
  }
  {
    Critic::Pass pass = critic1_.forward_batch(obs, act, batch, true);
    const nn::LossResult loss = nn::mse_loss(pass.values, y);
    last_epoch_.critic_loss1 = loss.value;
    const Critic::Grads grads = critic1_.backward(pass, loss.grad);
    critic1_.apply_gradients(grads, opt_c1_trunk_, opt_c1_head_);
  }

  ++updates_;
  if (updates_ % cfg_.actor_delay == 0) {
    // Delayed policy step: maximize critic 0 through the surrogate path.
    ActorBatchPass pass = actor_forward_surrogate_batch(
        actor_.pre, actor_.post, actor_.middle, nullptr, actor_.settings, obs, batch,
        rng_middle_);
    Critic::Pass cpass = critic0_.forward_batch(obs, pass.actions, batch, true);
    double policy_loss = 0.0;
    for (const double v : cpass.values) policy_loss -= v;
    policy_loss /= static_cast<double>(batch);
    last_epoch_.policy_loss = policy_loss;

    const std::vector<double> up(static_cast<std::size_t>(batch),
                                 -1.0 / static_cast<double>(batch));
    const Critic::Grads cgrads = critic0_.backward(cpass, up);  // critic params untouched
    const ActorGradients agrads = actor_backward(pass, cgrads.action);
    nn::adam_step(actor_.pre.params(), agrads.pre, opt_pre_);
    nn::adam_step(actor_.post.params(), agrads.post, opt_post_);
    if (variant_ == MiddleVariant::fc) {
      nn::adam_step(actor_.middle.fc.params(), agrads.fc, opt_fc_);
    }

    nn::soft_update(pre_target_, actor_.pre, cfg_.tau);
    nn::soft_update(post_target_, actor_.post, cfg_.tau);
    if (variant_ == MiddleVariant::fc) {
      nn::soft_update(fc_target_, actor_.middle.fc, cfg_.tau);
    }
    soft_update_critic(critic0_t_, critic0_, cfg_.tau);
    soft_update_critic(critic1_t_, critic1_, cfg_.tau);
    ++actor_updates_;
  }
}

void Agent::train(long long total_steps, int eval_interval, int eval_episodes,
                  long long checkpoint_interval, const std::string& checkpoint_prefix,
                  MetricsStream* metrics) {
  const double t0 = now_ms();
  const long long update_start =
      std::max<long long>(cfg_.warmup_steps, cfg_.batch_size);
  try {
    for (long long i = 0; i < total_steps; ++i) {
      explore_step();
      ++step_;

      if (step_ >= update_start &&
          replay_.size() >= static_cast<std::size_t>(cfg_.batch_size)) {
        run_update_epoch();
        if (metrics) {
          UpdateRecord rec;
          rec.step = step_;
          rec.episode = episode_;
          rec.critic_loss0 = last_epoch_.critic_loss0;
          rec.critic_loss1 = last_epoch_.critic_loss1;
          rec.policy_loss = last_epoch_.policy_loss;
          rec.bce = last_epoch_.bce;
          rec.pqc_calls = train_counter_.pqc_calls();
          rec.wall_ms = now_ms() - t0 + wall_ms_base_;
          metrics->add_update(rec);
        }
      }

      if (eval_interval > 0 && step_ % eval_interval == 0) {
        const EvalResult ev = evaluate(eval_episodes);
        if (metrics) {
          EvalRecord rec;
          rec.step = step_;
          rec.episode = episode_;
          rec.mean_return = ev.mean_return;
          rec.std_return = ev.std_return;
          rec.eval_pqc_calls = eval_counter_.pqc_calls();
          rec.wall_ms = now_ms() - t0 + wall_ms_base_;
          metrics->add_eval(rec);
        }
      }

      if (checkpoint_interval > 0 && !checkpoint_prefix.empty() &&
          step_ % checkpoint_interval == 0) {
        save_checkpoint(checkpoint_prefix + "step" + std::to_string(step_) + ".json");
      }
    }
  } catch (...) {
    if (!checkpoint_prefix.empty()) {
      save_checkpoint(checkpoint_prefix + "crash.json");
    }
    throw;
  }
  wall_ms_base_ += now_ms() - t0;
  if (!checkpoint_prefix.empty()) {
    save_checkpoint(checkpoint_prefix + "final.json");
  }
}

EvalResult Agent::evaluate(int episodes) {
  Rng eval_rng(derive_seed(kEvalSuiteSeed, 1));
  std::vector<double> returns(static_cast<std::size_t>(episodes), 0.0);
  for (int e = 0; e < episodes; ++e) {
    std::vector<double> obs =
        eval_env_->reset(derive_seed(kEvalSuiteSeed, 100 + static_cast<std::uint64_t>(e)));
    for (int t = 0; t < eval_env_->step_cap(); ++t) {
      const ActorOutput out = actor_forward_real(actor_, obs, eval_rng, eval_counter_);
      const StepResult sr = eval_env_->step(out.action);
      returns[static_cast<std::size_t>(e)] += sr.reward;
      if (sr.terminal || sr.truncated) break;
      obs = sr.obs;
    }
  }
  EvalResult res;
  res.episodes = episodes;
  for (const double r : returns) res.mean_return += r;
  res.mean_return /= std::max(1, episodes);
  double var = 0.0;
  for (const double r : returns) {
    const double d = r - res.mean_return;
    var += d * d;
  }
  res.std_return = episodes > 0 ? std::sqrt(var / episodes) : 0.0;
  return res;
}

nlohmann::json Agent::checkpoint_json() const {
  nlohmann::json fits = nlohmann::json::array();
  for (const FitSnapshot& f : fit_history_) {
    fits.push_back({{"step", f.step},
                    {"center", f.center},
                    {"radius", f.radius},
                    {"bce", f.bce}});
  }
  nlohmann::json j{
      {"version", 1},
      {"environment", env_->name()},
      {"variant", middle_variant_name(variant_)},
      {"seed", seed_},
      {"step", step_},
      {"episode", episode_},
      {"updates", updates_},
      {"actor_updates", actor_updates_},
      {"wall_ms", wall_ms_base_},
      {"agent",
       {{"gamma", cfg_.gamma},
        {"tau", cfg_.tau},
        {"lr", cfg_.lr},
        {"batch_size", cfg_.batch_size},
        {"actor_delay", cfg_.actor_delay},
        {"exploration_noise", cfg_.exploration_noise},
        {"target_noise", cfg_.target_noise},
        {"target_noise_clip", cfg_.target_noise_clip},
        {"warmup_steps", cfg_.warmup_steps},
        {"replay_capacity", cfg_.replay_capacity},
        {"actor_hidden", cfg_.actor_hidden},
        {"critic_hidden", cfg_.critic_hidden},
        {"clink_dim", cfg_.clink_dim}}},
      {"pqc",
       {{"num_qubits", pqc_cfg_.num_qubits},
        {"num_layers", pqc_cfg_.num_layers},
        {"shots", pqc_cfg_.shots},
        {"bit_flip_rate", pqc_cfg_.noise.bit_flip_rate},
        {"phase_flip_rate", pqc_cfg_.noise.phase_flip_rate},
        {"output_mode", pqc::output_mode_name(pqc_cfg_.output_mode)}}},
      {"surrogate",
       {{"hidden_width", sur_cfg_.hidden_width},
        {"tiny_batches", sur_cfg_.tiny_batches},
        {"tiny_batch_size", sur_cfg_.tiny_batch_size},
        {"batch_mix", sur_cfg_.batch_mix},
        {"buffer_capacity", sur_cfg_.buffer_capacity}}},
      {"counters",
       {{"pqc_calls", train_counter_.pqc_calls()},
        {"shot_executions", train_counter_.shot_executions()},
        {"eval_pqc_calls", eval_counter_.pqc_calls()},
        {"eval_shot_executions", eval_counter_.shot_executions()}}},
      {"nets",
       {{"pre", nn::net_to_json(actor_.pre)},
        {"post", nn::net_to_json(actor_.post)},
        {"pre_target", nn::net_to_json(pre_target_)},
        {"post_target", nn::net_to_json(post_target_)},
        {"critic0_trunk", nn::net_to_json(critic0_.trunk())},
        {"critic0_head", nn::net_to_json(critic0_.head())},
        {"critic1_trunk", nn::net_to_json(critic1_.trunk())},
        {"critic1_head", nn::net_to_json(critic1_.head())},
        {"critic0_t_trunk", nn::net_to_json(critic0_t_.trunk())},
        {"critic0_t_head", nn::net_to_json(critic0_t_.head())},
        {"critic1_t_trunk", nn::net_to_json(critic1_t_.trunk())},
        {"critic1_t_head", nn::net_to_json(critic1_t_.head())}}},
      {"optimizers",
       {{"pre", nn::adam_to_json(opt_pre_)},
        {"post", nn::adam_to_json(opt_post_)},
        {"c0_trunk", nn::adam_to_json(opt_c0_trunk_)},
        {"c0_head", nn::adam_to_json(opt_c0_head_)},
        {"c1_trunk", nn::adam_to_json(opt_c1_trunk_)},
        {"c1_head", nn::adam_to_json(opt_c1_head_)}}},
      {"rng",
       {{"explore", rng_explore_.serialize()},
        {"sample", rng_sample_.serialize()},
        {"pqc", rng_pqc_.serialize()},
        {"target", rng_target_.serialize()},
        {"fit", rng_fit_.serialize()},
        {"middle", rng_middle_.serialize()}}},
      {"fit_history", fits}};
  if (variant_ == MiddleVariant::pqc) {
    j["nets"]["qtdnn"] = nn::net_to_json(actor_.middle.qtdnn);
    j["optimizers"]["qtdnn"] = nn::adam_to_json(actor_.middle.qtdnn_opt);
  }
  if (variant_ == MiddleVariant::fc) {
    j["nets"]["fc"] = nn::net_to_json(actor_.middle.fc);
    j["nets"]["fc_target"] = nn::net_to_json(fc_target_);
    j["optimizers"]["fc"] = nn::adam_to_json(opt_fc_);
  }
  return j;
}

void Agent::save_checkpoint(const std::string& path) const {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint: " + path);
    out << checkpoint_json().dump();
  }
  std::rename(tmp.c_str(), path.c_str());
}

Agent Agent::load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read checkpoint: " + path);
  nlohmann::json j;
  in >> j;

  AgentConfig cfg;
  const auto& a = j.at("agent");
  cfg.gamma = a.at("gamma");
  cfg.tau = a.at("tau");
  cfg.lr = a.at("lr");
  cfg.batch_size = a.at("batch_size");
  cfg.actor_delay = a.at("actor_delay");
  cfg.exploration_noise = a.at("exploration_noise");
  cfg.target_noise = a.at("target_noise");
  cfg.target_noise_clip = a.at("target_noise_clip");
  cfg.warmup_steps = a.at("warmup_steps");
  cfg.replay_capacity = a.at("replay_capacity");
  cfg.actor_hidden = a.at("actor_hidden");
  cfg.critic_hidden = a.at("critic_hidden");
  cfg.clink_dim = a.at("clink_dim");

  pqc::PqcConfig pcfg;
  const auto& p = j.at("pqc");
  pcfg.num_qubits = p.at("num_qubits");
  pcfg.num_layers = p.at("num_layers");
  pcfg.shots = p.at("shots");
  pcfg.noise.bit_flip_rate = p.at("bit_flip_rate");
  pcfg.noise.phase_flip_rate = p.at("phase_flip_rate");
  pcfg.output_mode = pqc::output_mode_from_name(p.at("output_mode"));

  surrogate::SurrogateConfig scfg;
  const auto& s = j.at("surrogate");
  scfg.hidden_width = s.at("hidden_width");
  scfg.tiny_batches = s.at("tiny_batches");
  scfg.tiny_batch_size = s.at("tiny_batch_size");
  scfg.batch_mix = s.at("batch_mix");
  scfg.buffer_capacity = s.at("buffer_capacity");

  Agent agent(cfg, pcfg, middle_variant_from_name(j.at("variant")), scfg,
              make_env(j.at("environment")), j.at("seed").get<std::uint64_t>());

  agent.step_ = j.at("step");
  agent.episode_ = j.at("episode");
  agent.updates_ = j.at("updates");
  agent.actor_updates_ = j.at("actor_updates");
  agent.wall_ms_base_ = j.at("wall_ms");

  const auto& nets = j.at("nets");
  agent.actor_.pre = nn::net_from_json(nets.at("pre"));
  agent.actor_.post = nn::net_from_json(nets.at("post"));
  agent.pre_target_ = nn::net_from_json(nets.at("pre_target"));
  agent.post_target_ = nn::net_from_json(nets.at("post_target"));
  agent.critic0_.trunk() = nn::net_from_json(nets.at("critic0_trunk"));
  agent.critic0_.head() = nn::net_from_json(nets.at("critic0_head"));
  agent.critic1_.trunk() = nn::net_from_json(nets.at("critic1_trunk"));
  agent.critic1_.head() = nn::net_from_json(nets.at("critic1_head"));
  agent.critic0_t_.trunk() = nn::net_from_json(nets.at("critic0_t_trunk"));
  agent.critic0_t_.head() = nn::net_from_json(nets.at("critic0_t_head"));
  agent.critic1_t_.trunk() = nn::net_from_json(nets.at("critic1_t_trunk"));
  agent.critic1_t_.head() = nn::net_from_json(nets.at("critic1_t_head"));
  if (nets.contains("qtdnn")) {
    agent.actor_.middle.qtdnn = nn::net_from_json(nets.at("qtdnn"));
    agent.actor_.middle.qtdnn_opt = nn::adam_from_json(j.at("optimizers").at("qtdnn"));
  }
  if (nets.contains("fc")) {
    agent.actor_.middle.fc = nn::net_from_json(nets.at("fc"));
    agent.fc_target_ = nn::net_from_json(nets.at("fc_target"));
    agent.opt_fc_ = nn::adam_from_json(j.at("optimizers").at("fc"));
  }

  const auto& opts = j.at("optimizers");
  agent.opt_pre_ = nn::adam_from_json(opts.at("pre"));
  agent.opt_post_ = nn::adam_from_json(opts.at("post"));
  agent.opt_c0_trunk_ = nn::adam_from_json(opts.at("c0_trunk"));
  agent.opt_c0_head_ = nn::adam_from_json(opts.at("c0_head"));
  agent.opt_c1_trunk_ = nn::adam_from_json(opts.at("c1_trunk"));
  agent.opt_c1_head_ = nn::adam_from_json(opts.at("c1_head"));

  const auto& rng = j.at("rng");
  agent.rng_explore_.deserialize(rng.at("explore").get<std::string>());
  agent.rng_sample_.deserialize(rng.at("sample").get<std::string>());
  agent.rng_pqc_.deserialize(rng.at("pqc").get<std::string>());
  agent.rng_target_.deserialize(rng.at("target").get<std::string>());
  agent.rng_fit_.deserialize(rng.at("fit").get<std::string>());
  agent.rng_middle_.deserialize(rng.at("middle").get<std::string>());

  const auto& counters = j.at("counters");
  agent.train_counter_.restore(counters.at("pqc_calls").get<std::uint64_t>(),
                               counters.at("shot_executions").get<std::uint64_t>());
  agent.eval_counter_.restore(
      counters.at("eval_pqc_calls").get<std::uint64_t>(),
      counters.at("eval_shot_executions").get<std::uint64_t>());

  agent.fit_history_.clear();
  for (const auto& f : j.at("fit_history")) {
    agent.fit_history_.push_back(
        FitSnapshot{f.at("step").get<long long>(),
                    f.at("center").get<std::vector<double>>(),
                    f.at("radius").get<double>(), f.at("bce").get<double>()});
  }
  return agent;
}

}  // namespace hqrl::rl
