#include "hqrl/grad/cost_model.hpp"

#include <stdexcept>

namespace hqrl::grad {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("shift_cost_report: shot count overflows 64 bits");
  }
  return out;
}

}  // namespace

ShiftCostReport shift_cost_report(std::uint64_t inputs, std::uint64_t outputs,
                                  std::uint64_t shots, std::uint64_t batch_size,
                                  std::uint64_t updates, double per_shot_seconds) {
  if (inputs == 0 || outputs == 0 || shots == 0 || batch_size == 0 ||
      updates == 0 || !(per_shot_seconds > 0.0)) {
    throw std::invalid_argument("shift_cost_report: all inputs must be positive");
  }
  ShiftCostReport r;
  r.inputs = inputs;
  r.outputs = outputs;
  r.shots = shots;
  r.batch_size = batch_size;
  r.updates = updates;
  r.per_shot_seconds = per_shot_seconds;

  r.total_shots_per_update =
      checked_mul(checked_mul(inputs, outputs), checked_mul(shots, batch_size));
  r.total_shots_full_run = checked_mul(r.total_shots_per_update, updates);
  r.total_seconds_per_update =
      static_cast<double>(r.total_shots_per_update) * per_shot_seconds;
  r.total_seconds_full_run = r.total_seconds_per_update * static_cast<double>(updates);

  r.surrogate_pqc_calls = updates;
  r.surrogate_shots = checked_mul(shots, updates);
  r.surrogate_seconds = static_cast<double>(r.surrogate_shots) * per_shot_seconds;
  return r;
}

nlohmann::json ShiftCostReport::to_json() const {
  return nlohmann::json{
      {"inputs", inputs},
      {"outputs", outputs},
      {"shots", shots},
      {"batch_size", batch_size},
      {"updates", updates},
      {"per_shot_seconds", per_shot_seconds},
      {"parameter_shift",
       {{"total_shots_per_update", total_shots_per_update},
        {"total_shots_full_run", total_shots_full_run},
        {"total_seconds_per_update", total_seconds_per_update},
        {"total_seconds_full_run", total_seconds_full_run}}},
      {"surrogate",
       {{"pqc_calls", surrogate_pqc_calls},
        {"shot_executions", surrogate_shots},
        {"quantum_seconds", surrogate_seconds}}}};
}

}  // namespace hqrl::grad
