#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "hqrl/pqc/layer.hpp"
#include "hqrl/rl/agent.hpp"
#include "hqrl/surrogate/qtdnn.hpp"

namespace hqrl::cli {

// Configuration problems map to exit code 2 at the CLI boundary.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One run description: environment, middle-block variant, PQC and agent
// settings, seeds and budget. Parsed from a JSON document; unknown keys are
// rejected with the offending path.
struct RunConfig {
  std::string environment = "pendulum";
  std::string variant = "pqc";
  pqc::PqcConfig pqc{5, 5, 100, {}, pqc::OutputMode::marginal};
  rl::AgentConfig agent;
  surrogate::SurrogateConfig surrogate;

  std::vector<std::uint64_t> seeds = {0};
  long long total_steps = 0;
  int eval_interval = 10000;
  int eval_episodes = 10;
  long long checkpoint_interval = 0;  // 0: final checkpoint only
  std::string output_dir = "run_out";

  // Optional ablation grid for the `ablate` subcommand.
  std::vector<std::string> ablate_variants;
  std::vector<int> ablate_qubits;
  std::vector<int> ablate_shots;

  static RunConfig from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
  void validate() const;

  bool operator==(const RunConfig& other) const;
};

// Loads a config file, applies dotted-path overrides ("agent.lr=1e-3"),
// validates. Throws ConfigError with a message naming the file/key.
RunConfig load_run_config(const std::string& path,
                          const std::vector<std::string>& overrides);

// Applies one "dotted.path=value" override to a JSON document.
void apply_override(nlohmann::json& doc, const std::string& spec);

// Output root: $HQRL_OUTPUT_ROOT when set, else the current directory.
std::string resolve_output_dir(const std::string& configured);

}  // namespace hqrl::cli
