#pragma once

#include <cstdint>

#include "json.hpp"

namespace hqrl::grad {

// Shot/time budget of parameter-shift gradient estimation versus the
// surrogate path that replaces it.
struct ShiftCostReport {
  std::uint64_t inputs = 0;      // I
  std::uint64_t outputs = 0;     // O
  std::uint64_t shots = 0;       // S
  std::uint64_t batch_size = 0;  // N_b
  std::uint64_t updates = 0;     // K
  double per_shot_seconds = 0.0;

  std::uint64_t total_shots_per_update = 0;  // I * O * S * N_b
  std::uint64_t total_shots_full_run = 0;    // per-update * K
  double total_seconds_per_update = 0.0;
  double total_seconds_full_run = 0.0;

  // Surrogate-trained run for the same K updates: K calls, S*K shots.
  std::uint64_t surrogate_pqc_calls = 0;
  std::uint64_t surrogate_shots = 0;
  double surrogate_seconds = 0.0;

  nlohmann::json to_json() const;
};

ShiftCostReport shift_cost_report(std::uint64_t inputs, std::uint64_t outputs,
                                  std::uint64_t shots, std::uint64_t batch_size,
                                  std::uint64_t updates, double per_shot_seconds);

}  // namespace hqrl::grad
