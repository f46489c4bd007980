#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace hqrl::rl {

struct StepResult {
  std::vector<double> obs;
  double reward = 0.0;
  bool terminal = false;   // true environment termination (bootstrap stops)
  bool truncated = false;  // step cap hit (bootstrap continues)
};

// Desk-scale continuous-control environment contract.
class Env {
 public:
  virtual ~Env() = default;
  virtual std::vector<double> reset(std::uint64_t seed) = 0;
  virtual StepResult step(std::span<const double> action) = 0;
  virtual int obs_dim() const = 0;
  virtual int act_dim() const = 0;
  virtual double action_low() const = 0;
  virtual double action_high() const = 0;
  virtual int step_cap() const = 0;
  virtual std::string name() const = 0;
  // Fresh instance of the same environment (used for evaluation rollouts).
  virtual std::unique_ptr<Env> clone() const = 0;
};

// Built-ins: "pendulum" (swing-up, obs 3 / act 1) and "reacher"
// (damped point mass, obs 4 / act 2).
std::unique_ptr<Env> make_env(const std::string& id);

}  // namespace hqrl::rl
