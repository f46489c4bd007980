#include "hqrl/cli/run_config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace hqrl::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::vector<std::string>& known,
                    const std::string& scope) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const auto& k : known) {
      if (key == k) {
        ok = true;
        break;
      }
    }
    if (!ok) throw ConfigError("unknown config key: " + scope + key);
  }
}

template <typename T>
void read_if(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

}  // namespace

RunConfig RunConfig::from_json(const json& doc) {
  RunConfig cfg;
  reject_unknown(doc, {"environment", "variant", "pqc", "agent", "surrogate", "run",
                       "ablation"},
                 "");
  read_if(doc, "environment", cfg.environment);
  read_if(doc, "variant", cfg.variant);

  if (doc.contains("pqc")) {
    const json& p = doc.at("pqc");
    reject_unknown(p, {"num_qubits", "num_layers", "shots", "bit_flip_rate",
                       "phase_flip_rate", "output_mode"},
                   "pqc.");
    read_if(p, "num_qubits", cfg.pqc.num_qubits);
    read_if(p, "num_layers", cfg.pqc.num_layers);
    read_if(p, "shots", cfg.pqc.shots);
    read_if(p, "bit_flip_rate", cfg.pqc.noise.bit_flip_rate);
    read_if(p, "phase_flip_rate", cfg.pqc.noise.phase_flip_rate);
    if (p.contains("output_mode")) {
      cfg.pqc.output_mode =
          pqc::output_mode_from_name(p.at("output_mode").get<std::string>());
    }
  }

  if (doc.contains("agent")) {
    const json& a = doc.at("agent");
    reject_unknown(a, {"gamma", "tau", "lr", "batch_size", "actor_delay",
                       "exploration_noise", "target_noise", "target_noise_clip",
                       "warmup_steps", "replay_capacity", "actor_hidden",
                       "critic_hidden", "clink_dim"},
                   "agent.");
    read_if(a, "gamma", cfg.agent.gamma);
    read_if(a, "tau", cfg.agent.tau);
    read_if(a, "lr", cfg.agent.lr);
    read_if(a, "batch_size", cfg.agent.batch_size);
    read_if(a, "actor_delay", cfg.agent.actor_delay);
    read_if(a, "exploration_noise", cfg.agent.exploration_noise);
    read_if(a, "target_noise", cfg.agent.target_noise);
    read_if(a, "target_noise_clip", cfg.agent.target_noise_clip);
    read_if(a, "warmup_steps", cfg.agent.warmup_steps);
    read_if(a, "replay_capacity", cfg.agent.replay_capacity);
    read_if(a, "actor_hidden", cfg.agent.actor_hidden);
    read_if(a, "critic_hidden", cfg.agent.critic_hidden);
    read_if(a, "clink_dim", cfg.agent.clink_dim);
  }

  if (doc.contains("surrogate")) {
    const json& s = doc.at("surrogate");
    reject_unknown(s, {"hidden_width", "tiny_batches", "tiny_batch_size", "batch_mix",
                       "buffer_capacity"},
                   "surrogate.");
    read_if(s, "hidden_width", cfg.surrogate.hidden_width);
    read_if(s, "tiny_batches", cfg.surrogate.tiny_batches);
    read_if(s, "tiny_batch_size", cfg.surrogate.tiny_batch_size);
    read_if(s, "batch_mix", cfg.surrogate.batch_mix);
    read_if(s, "buffer_capacity", cfg.surrogate.buffer_capacity);
  }

  if (doc.contains("run")) {
    const json& r = doc.at("run");
    reject_unknown(r, {"seeds", "total_steps", "eval_interval", "eval_episodes",
                       "checkpoint_interval", "output_dir"},
                   "run.");
    read_if(r, "seeds", cfg.seeds);
    read_if(r, "total_steps", cfg.total_steps);
    read_if(r, "eval_interval", cfg.eval_interval);
    read_if(r, "eval_episodes", cfg.eval_episodes);
    read_if(r, "checkpoint_interval", cfg.checkpoint_interval);
    read_if(r, "output_dir", cfg.output_dir);
  }

  if (doc.contains("ablation")) {
    const json& g = doc.at("ablation");
    reject_unknown(g, {"variants", "qubits", "shots"}, "ablation.");
    read_if(g, "variants", cfg.ablate_variants);
    read_if(g, "qubits", cfg.ablate_qubits);
    read_if(g, "shots", cfg.ablate_shots);
  }
  return cfg;
}

nlohmann::json RunConfig::to_json() const {
  json doc{
      {"environment", environment},
      {"variant", variant},
      {"pqc",
       {{"num_qubits", pqc.num_qubits},
        {"num_layers", pqc.num_layers},
        {"shots", pqc.shots},
        {"bit_flip_rate", pqc.noise.bit_flip_rate},
        {"phase_flip_rate", pqc.noise.phase_flip_rate},
        {"output_mode", pqc::output_mode_name(pqc.output_mode)}}},
      {"agent",
       {{"gamma", agent.gamma},
        {"tau", agent.tau},
        {"lr", agent.lr},
        {"batch_size", agent.batch_size},
        {"actor_delay", agent.actor_delay},
        {"exploration_noise", agent.exploration_noise},
        {"target_noise", agent.target_noise},
        {"target_noise_clip", agent.target_noise_clip},
        {"warmup_steps", agent.warmup_steps},
        {"replay_capacity", agent.replay_capacity},
        {"actor_hidden", agent.actor_hidden},
        {"critic_hidden", agent.critic_hidden},
        {"clink_dim", agent.clink_dim}}},
      {"surrogate",
       {{"hidden_width", surrogate.hidden_width},
        {"tiny_batches", surrogate.tiny_batches},
        {"tiny_batch_size", surrogate.tiny_batch_size},
        {"batch_mix", surrogate.batch_mix},
        {"buffer_capacity", surrogate.buffer_capacity}}},
      {"run",
       {{"seeds", seeds},
        {"total_steps", total_steps},
        {"eval_interval", eval_interval},
        {"eval_episodes", eval_episodes},
        {"checkpoint_interval", checkpoint_interval},
        {"output_dir", output_dir}}}};
  if (!ablate_variants.empty() || !ablate_qubits.empty() || !ablate_shots.empty()) {
    doc["ablation"] = {{"variants", ablate_variants},
                       {"qubits", ablate_qubits},
                       {"shots", ablate_shots}};
  }
  return doc;
}

void RunConfig::validate() const {
  try {
    rl::middle_variant_from_name(variant);
    rl::make_env(environment);
    pqc.validate();
    agent.validate();
    surrogate.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (seeds.empty()) throw ConfigError("run.seeds must not be empty");
  if (total_steps < 0) throw ConfigError("run.total_steps must be >= 0");
  if (eval_interval < 0) throw ConfigError("run.eval_interval must be >= 0");
  if (eval_episodes < 1) throw ConfigError("run.eval_episodes must be >= 1");
  if (checkpoint_interval < 0) throw ConfigError("run.checkpoint_interval must be >= 0");
  if (output_dir.empty()) throw ConfigError("run.output_dir must not be empty");
}

bool RunConfig::operator==(const RunConfig& other) const {
  return to_json() == other.to_json();
}

void apply_override(nlohmann::json& doc, const std::string& spec) {
  const std::size_t eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override must look like section.key=value: " + spec);
  }
  const std::string path = spec.substr(0, eq);
  const std::string value = spec.substr(eq + 1);

  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (key.empty()) throw ConfigError("bad override path: " + path);
    if (dot == std::string::npos) {
      json parsed = json::parse(value, nullptr, false);
      if (parsed.is_discarded()) parsed = value;  // bare strings stay strings
      (*node)[key] = parsed;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

RunConfig load_run_config(const std::string& path,
                          const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  for (const auto& o : overrides) apply_override(doc, o);
  RunConfig cfg = RunConfig::from_json(doc);
  cfg.validate();
  return cfg;
}

std::string resolve_output_dir(const std::string& configured) {
  namespace fs = std::filesystem;
  fs::path p(configured);
  if (p.is_absolute()) return p.string();
  const char* root = std::getenv("HQRL_OUTPUT_ROOT");
  if (root && *root) return (fs::path(root) / p).string();
  return p.string();
}

}  // namespace hqrl::cli
