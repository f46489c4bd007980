#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace hqrl::rl {

struct UpdateRecord {
  long long step = 0;
  long long episode = 0;
  double critic_loss0 = 0.0;
  double critic_loss1 = 0.0;
  std::optional<double> policy_loss;  // present on delayed actor-update steps
  std::optional<double> bce;          // present for the pqc variant
  std::uint64_t pqc_calls = 0;        // cumulative training counter
  double wall_ms = 0.0;
};

struct EvalRecord {
  long long step = 0;
  long long episode = 0;
  double mean_return = 0.0;
  double std_return = 0.0;
  std::uint64_t eval_pqc_calls = 0;  // cumulative, separate from training
  double wall_ms = 0.0;
};

// Collects per-update and per-evaluation records, optionally streaming them
// to a JSONL file as they arrive.
class MetricsStream {
 public:
  MetricsStream() = default;
  explicit MetricsStream(const std::string& jsonl_path);

  void add_update(const UpdateRecord& r);
  void add_eval(const EvalRecord& r);

  const std::vector<UpdateRecord>& updates() const { return updates_; }
  const std::vector<EvalRecord>& evals() const { return evals_; }

  // Table-2-shaped per-seed summary, one row per evaluation point:
  // episode, mean_return, policy_loss, bce_loss, pqc_calls, minutes.
  void write_summary_csv(const std::string& path) const;

  static constexpr const char* kSummaryHeader =
      "episode,mean_return,policy_loss,bce_loss,pqc_calls,minutes";
  static constexpr const char* kAggregateHeader =
      "step,mean_return,std_return,rolling_mean_return,ci95_lo,ci95_hi";

  // Cross-seed aggregate per evaluation point with a rolling mean over
  // `window` points and a 95% confidence band.
  static void write_aggregate_csv(const std::vector<std::vector<EvalRecord>>& per_seed,
                                  const std::string& path, int window = 10);

 private:
  std::vector<UpdateRecord> updates_;
  std::vector<EvalRecord> evals_;
  std::ofstream jsonl_;
};

}  // namespace hqrl::rl
