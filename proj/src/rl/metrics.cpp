#include "hqrl/rl/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <stdexcept>

#include "json.hpp"

namespace hqrl::rl {

MetricsStream::MetricsStream(const std::string& jsonl_path) {
  jsonl_.open(jsonl_path, std::ios::trunc);
  if (!jsonl_) throw std::runtime_error("cannot open metrics file: " + jsonl_path);
}

void MetricsStream::add_update(const UpdateRecord& r) {
  updates_.push_back(r);
  if (jsonl_.is_open()) {
    nlohmann::json line{{"type", "update"},
                        {"step", r.step},
                        {"episode", r.episode},
                        {"critic_loss0", r.critic_loss0},
                        {"critic_loss1", r.critic_loss1},
                        {"pqc_calls", r.pqc_calls},
                        {"wall_ms", r.wall_ms}};
    if (r.policy_loss) line["policy_loss"] = *r.policy_loss;
    if (r.bce) line["bce"] = *r.bce;
    jsonl_ << line.dump() << '\n';
  }
}

void MetricsStream::add_eval(const EvalRecord& r) {
  evals_.push_back(r);
  if (jsonl_.is_open()) {
    nlohmann::json line{{"type", "eval"},
                        {"step", r.step},
                        {"episode", r.episode},
                        {"mean_return", r.mean_return},
                        {"std_return", r.std_return},
                        {"eval_pqc_calls", r.eval_pqc_calls},
                        {"wall_ms", r.wall_ms}};
    jsonl_ << line.dump() << '\n';
    jsonl_.flush();
  }
}

void MetricsStream::write_summary_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open summary file: " + path);
  out << std::setprecision(12);
  out << kSummaryHeader << '\n';
  for (const EvalRecord& ev : evals_) {
    // Latest update-side diagnostics at or before this evaluation.
    double policy_loss = 0.0, bce = 0.0;
    bool have_policy = false, have_bce = false;
    for (const UpdateRecord& u : updates_) {
      if (u.step > ev.step) break;
      if (u.policy_loss) {
        policy_loss = *u.policy_loss;
        have_policy = true;
      }
      if (u.bce) {
        bce = *u.bce;
        have_bce = true;
      }
    }
    out << ev.episode << ',' << ev.mean_return << ','
        << (have_policy ? std::to_string(policy_loss) : "") << ','
        << (have_bce ? std::to_string(bce) : "") << ',';
    // pqc_calls: training counter value at this step
    std::uint64_t calls = 0;
    for (const UpdateRecord& u : updates_) {
      if (u.step > ev.step) break;
      calls = u.pqc_calls;
    }
    out << calls << ',' << ev.wall_ms / 60000.0 << '\n';
  }
}

void MetricsStream::write_aggregate_csv(
    const std::vector<std::vector<EvalRecord>>& per_seed, const std::string& path,
    int window) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open aggregate file: " + path);
  out << std::setprecision(12);
  out << kAggregateHeader << '\n';
  if (per_seed.empty()) return;

  std::size_t points = per_seed.front().size();
  for (const auto& seed_evals : per_seed) points = std::min(points, seed_evals.size());
  const double n_seeds = static_cast<double>(per_seed.size());

  std::vector<double> means(points);
  for (std::size_t p = 0; p < points; ++p) {
    double mean = 0.0;
    for (const auto& seed_evals : per_seed) mean += seed_evals[p].mean_return;
    mean /= n_seeds;
    double var = 0.0;
    for (const auto& seed_evals : per_seed) {
      const double d = seed_evals[p].mean_return - mean;
      var += d * d;
    }
    const double stddev = n_seeds > 1 ? std::sqrt(var / (n_seeds - 1)) : 0.0;
    means[p] = mean;

    double rolling = 0.0;
    int count = 0;
    for (std::size_t q = (p + 1 >= static_cast<std::size_t>(window))
                             ? p + 1 - static_cast<std::size_t>(window)
                             : 0;
         q <= p; ++q) {
      rolling += means[q];
      ++count;
    }
    rolling /= count;
    const double half = n_seeds > 1 ? 1.96 * stddev / std::sqrt(n_seeds) : 0.0;
    out << per_seed.front()[p].step << ',' << mean << ',' << stddev << ',' << rolling
        << ',' << mean - half << ',' << mean + half << '\n';
  }
}

}  // namespace hqrl::rl
