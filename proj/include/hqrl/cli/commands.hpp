#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hqrl/cli/run_config.hpp"

namespace hqrl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFail = 1;
inline constexpr int kExitUsage = 2;

struct TrainArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;  // replaces the config's seed list
};
int cmd_train(const TrainArgs& args);

struct AblateArgs {
  std::string config_path;
  std::vector<std::string> overrides;
};
int cmd_ablate(const AblateArgs& args);

struct VerifyGradientsArgs {
  int qubits = 5;
  int layers = 5;
  int circuits = 20;
  int net_probes = 100;
  double fd_step = 1e-4;
  double shift = M_PI / 2.0;  // fault-injection hook; pi/2 is the exact rule
  std::uint64_t seed = 0;
};
int cmd_verify_gradients(const VerifyGradientsArgs& args);

struct FidelityReportArgs {
  std::string checkpoint_path;
  int probes = 64;
  std::string output_path;  // empty: stdout
  std::uint64_t seed = 0;
};
int cmd_fidelity_report(const FidelityReportArgs& args);

struct BenchCostArgs {
  long long inputs = 220;
  long long outputs = 10;
  long long shots = 10;
  long long batch_size = 256;
  long long updates = 750000;
  double per_shot_seconds = 0.6e-6;
};
int cmd_bench_cost(const BenchCostArgs& args);

struct EvalArgs {
  std::string checkpoint_path;
  int episodes = 10;
};
int cmd_eval(const EvalArgs& args);

// Shared with `train` and `ablate`; exposed for the test suites.
struct SeedRunResult {
  std::uint64_t seed = 0;
  bool has_final_eval = false;
  double final_eval_mean = 0.0;
  double final_eval_std = 0.0;
  double minutes = 0.0;
  std::uint64_t pqc_calls = 0;
  std::string metrics_path, summary_path, checkpoint_path;
  std::vector<rl::EvalRecord> evals;
};
SeedRunResult run_one_seed(const RunConfig& cfg, std::uint64_t seed,
                           const std::string& out_dir);

inline constexpr const char* kAblationHeader =
    "variant,shots,qubits,mean_return,std_return,best_return,minutes,pqc_calls,status";

}  // namespace hqrl::cli
