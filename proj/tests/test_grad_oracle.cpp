#include "doctest.h"

#include <cmath>

#include "hqrl/grad/cost_model.hpp"
#include "hqrl/grad/oracles.hpp"

using namespace hqrl;
using namespace hqrl::grad;
using namespace hqrl::pqc;

namespace {

ControlVector random_controls(const PqcConfig& cfg, Rng& rng) {
  std::vector<double> raw(static_cast<std::size_t>(cfg.control_dim()));
  for (double& v : raw) v = rng.normal();
  return encode_controls(raw, cfg);
}

}  // namespace

TEST_CASE("single-qubit derivative reproduces sin(theta)/2") {
  const PqcConfig cfg{1, 1, 1, {}, OutputMode::marginal};
  SUBCASE("finite differences at theta = pi/3") {
    const ControlVector q_i{1, 1, {M_PI / 3.0, 0.0, 0.0, 0.0}};
    const Jacobian fd = finite_diff_jacobian(q_i, cfg, 1e-4);
    CHECK(fd.at(0, 0) == doctest::Approx(std::sin(M_PI / 3.0) / 2.0).epsilon(1e-6));
  }
  SUBCASE("parameter shift is exact across 100 angles") {
    for (int i = 0; i < 100; ++i) {
      const double theta = -M_PI + 2.0 * M_PI * i / 99.0;
      const ControlVector q_i{1, 1, {theta, 0.0, 0.0, 0.0}};
      const Jacobian ps = parameter_shift_jacobian(q_i, cfg);
      CHECK(std::abs(ps.at(0, 0) - std::sin(theta) / 2.0) < 1e-10);
    }
  }
  SUBCASE("zero angles sit at the extremum") {
    const ControlVector q_i{1, 1, {0.0, 0.0, 0.0, 0.0}};
    const Jacobian fd = finite_diff_jacobian(q_i, cfg, 1e-4);
    const Jacobian ps = parameter_shift_jacobian(q_i, cfg);
    CHECK(std::abs(fd.at(0, 0)) < 1e-8);
    CHECK(std::abs(ps.at(0, 0)) < 1e-14);
  }
  SUBCASE("phase derivative of a Z-diagonal measurement vanishes") {
    const ControlVector q_i{1, 1, {1.1, 0.7, 0.0, 0.0}};
    const Jacobian ps = parameter_shift_jacobian(q_i, cfg);
    CHECK(std::abs(ps.at(0, 1)) < 1e-14);  // column 1 is the phi control
  }
}

TEST_CASE("jacobians cover only the angle controls") {
  const PqcConfig cfg{3, 2, 1, {}, OutputMode::marginal};
  Rng rng(3);
  const ControlVector q_i = random_controls(cfg, rng);
  const Jacobian fd = finite_diff_jacobian(q_i, cfg);
  CHECK(fd.rows == 3);
  CHECK(fd.cols == 12);  // 2NM, no entangler-index columns
}

TEST_CASE("oracles agree on random circuits") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_index(5));  // up to 6
    const int m = 1 + static_cast<int>(rng.uniform_index(6));
    const PqcConfig cfg{n, m, 1, {}, OutputMode::marginal};
    const ControlVector q_i = random_controls(cfg, rng);
    const Jacobian fd = finite_diff_jacobian(q_i, cfg, 1e-4);
    const Jacobian ps = parameter_shift_jacobian(q_i, cfg);
    CHECK(max_abs_diff(fd, ps) < 1e-6);
  }
}

TEST_CASE("finite differences reject a non-positive step") {
  const PqcConfig cfg{1, 1, 1, {}, OutputMode::marginal};
  const ControlVector q_i{1, 1, {0.0, 0.0, 0.0, 0.0}};
  CHECK_THROWS_AS(finite_diff_jacobian(q_i, cfg, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(finite_diff_jacobian(q_i, cfg, -1e-4), std::invalid_argument);
}

TEST_CASE("shift cost report") {
  SUBCASE("reproduces the light-budget shot count") {
    const ShiftCostReport r = shift_cost_report(220, 10, 10, 256, 750000, 0.6e-6);
    CHECK(r.total_shots_per_update == 5632000);
    CHECK(r.total_seconds_per_update == doctest::Approx(3.3792).epsilon(1e-9));
    CHECK(r.surrogate_pqc_calls == 750000);
    CHECK(r.surrogate_shots == 7500000);
  }
  SUBCASE("reproduces the heavy-budget seconds per update") {
    const ShiftCostReport r = shift_cost_report(220, 10, 1000, 256, 1, 0.5e-6);
    CHECK(r.total_shots_per_update == 563200000);
    CHECK(r.total_seconds_per_update == doctest::Approx(281.6).epsilon(1e-9));
  }
  SUBCASE("all-ones input is one shot") {
    const ShiftCostReport r = shift_cost_report(1, 1, 1, 1, 1, 1e-6);
    CHECK(r.total_shots_per_update == 1);
  }
  SUBCASE("strictly increasing in every argument") {
    const ShiftCostReport base = shift_cost_report(10, 10, 10, 10, 10, 1e-6);
    const std::uint64_t args[5] = {10, 10, 10, 10, 10};
    for (int i = 0; i < 5; ++i) {
      std::uint64_t bumped[5];
      for (int j = 0; j < 5; ++j) bumped[j] = args[j];
      bumped[i] += 1;
      const ShiftCostReport r = shift_cost_report(bumped[0], bumped[1], bumped[2],
                                                  bumped[3], bumped[4], 1e-6);
      if (i < 4) {
        CHECK(r.total_shots_per_update > base.total_shots_per_update);
      }
      CHECK(r.total_seconds_full_run > base.total_seconds_full_run);
    }
  }
  SUBCASE("rejects zeros and overflow") {
    CHECK_THROWS_AS(shift_cost_report(0, 1, 1, 1, 1, 1e-6), std::invalid_argument);
    CHECK_THROWS_AS(shift_cost_report(1, 1, 1, 1, 1, 0.0), std::invalid_argument);
    const std::uint64_t big = 1ull << 60;
    CHECK_THROWS_AS(shift_cost_report(big, big, big, big, 1, 1e-6),
                    std::overflow_error);
  }
}
