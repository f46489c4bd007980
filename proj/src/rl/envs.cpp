#include "hqrl/rl/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hqrl/rng.hpp"

namespace hqrl::rl {

namespace {

double wrap_angle(double a) {
  a = std::fmod(a + M_PI, 2.0 * M_PI);
  if (a < 0.0) a += 2.0 * M_PI;
  return a - M_PI;
}

// Torque-limited pendulum swing-up. theta = 0 is upright; reward penalises
// angle, velocity and control effort.
class PendulumEnv final : public Env {
 public:
  std::vector<double> reset(std::uint64_t seed) override {
    Rng rng(seed);
    theta_ = rng.uniform(-M_PI, M_PI);
    theta_dot_ = rng.uniform(-1.0, 1.0);
    steps_ = 0;
    return observation();
  }

  StepResult step(std::span<const double> action) override {
    const double u = std::clamp(action[0], -kMaxTorque, kMaxTorque);
    const double cost = wrap_angle(theta_) * wrap_angle(theta_) +
                        0.1 * theta_dot_ * theta_dot_ + 0.001 * u * u;
    theta_dot_ += (3.0 * kG / (2.0 * kLength) * std::sin(theta_) +
                   3.0 / (kMass * kLength * kLength) * u) *
                  kDt;
    theta_dot_ = std::clamp(theta_dot_, -kMaxSpeed, kMaxSpeed);
    theta_ += theta_dot_ * kDt;
    ++steps_;
    return {observation(), -cost, false, steps_ >= step_cap()};
  }

  int obs_dim() const override { return 3; }
  int act_dim() const override { return 1; }
  double action_low() const override { return -kMaxTorque; }
  double action_high() const override { return kMaxTorque; }
  int step_cap() const override { return 200; }
  std::string name() const override { return "pendulum"; }
  std::unique_ptr<Env> clone() const override { return std::make_unique<PendulumEnv>(); }

 private:
  static constexpr double kG = 10.0, kMass = 1.0, kLength = 1.0, kDt = 0.05;
  static constexpr double kMaxSpeed = 8.0, kMaxTorque = 2.0;

  std::vector<double> observation() const {
    return {std::cos(theta_), std::sin(theta_), theta_dot_};
  }

  double theta_ = 0.0, theta_dot_ = 0.0;
  int steps_ = 0;
};

// Damped point mass pushed toward the origin; reward penalises distance and
// control effort.
class ReacherEnv final : public Env {
 public:
  std::vector<double> reset(std::uint64_t seed) override {
    Rng rng(seed);
    pos_ = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    vel_ = {0.0, 0.0};
    steps_ = 0;
    return observation();
  }

  StepResult step(std::span<const double> action) override {
    double effort = 0.0;
    for (int d = 0; d < 2; ++d) {
      const double a = std::clamp(action[d], -1.0, 1.0);
      effort += a * a;
      vel_[d] += (kForce * a - kDrag * vel_[d]) * kDt;
      vel_[d] = std::clamp(vel_[d], -4.0, 4.0);
      pos_[d] += vel_[d] * kDt;
      pos_[d] = std::clamp(pos_[d], -2.0, 2.0);
    }
    const double dist_sq = pos_[0] * pos_[0] + pos_[1] * pos_[1];
    ++steps_;
    return {observation(), -(dist_sq + 0.01 * effort), false, steps_ >= step_cap()};
  }

  int obs_dim() const override { return 4; }
  int act_dim() const override { return 2; }
  double action_low() const override { return -1.0; }
  double action_high() const override { return 1.0; }
  int step_cap() const override { return 200; }
  std::string name() const override { return "reacher"; }
  std::unique_ptr<Env> clone() const override { return std::make_unique<ReacherEnv>(); }

 private:
  static constexpr double kForce = 4.0, kDrag = 2.0, kDt = 0.05;

  std::vector<double> observation() const {
    return {pos_[0], pos_[1], vel_[0], vel_[1]};
  }

  std::array<double, 2> pos_{0.0, 0.0}, vel_{0.0, 0.0};
  int steps_ = 0;
};

}  // namespace

std::unique_ptr<Env> make_env(const std::string& id) {
  if (id == "pendulum") return std::make_unique<PendulumEnv>();
  if (id == "reacher") return std::make_unique<ReacherEnv>();
  throw std::invalid_argument("unknown environment: " + id);
}

}  // namespace hqrl::rl
