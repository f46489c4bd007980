#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "hqrl/cli/commands.hpp"
#include "hqrl/cli/run_config.hpp"

using namespace hqrl;
using namespace hqrl::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json tiny_config_json(const std::string& out_dir) {
  return json{
      {"environment", "pendulum"},
      {"variant", "fc"},
      {"pqc", {{"num_qubits", 2}, {"num_layers", 1}, {"shots", 8}}},
      {"agent",
       {{"batch_size", 16},
        {"warmup_steps", 20},
        {"actor_hidden", 8},
        {"critic_hidden", 8},
        {"clink_dim", 3}}},
      {"surrogate", {{"hidden_width", 8}, {"tiny_batches", 2}, {"tiny_batch_size", 8}}},
      {"run",
       {{"seeds", {0}},
        {"total_steps", 0},
        {"eval_interval", 50},
        {"eval_episodes", 2},
        {"output_dir", out_dir}}}};
}

std::string make_temp_dir(const std::string& tag) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() /
                       ("hqrl_" + tag + "_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter++));
  fs::create_directories(dir);
  return dir.string();
}

std::string write_config(const json& doc, const std::string& dir) {
  const std::string path = (fs::path(dir) / "config.json").string();
  std::ofstream out(path);
  out << doc.dump(2);
  return path;
}

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

CommandResult run_cli(const std::string& args) {
  const char* cli = std::getenv("HQRL_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "HQRL_CLI must point at the CLI binary");
  const std::string cmd = std::string(cli) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CommandResult res;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) res.output.append(buf, n);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

// JSONL comparison with the wall-clock field stripped (the only
// run-to-run nondeterministic field).
std::string canonical_metrics(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    json j = json::parse(line);
    j.erase("wall_ms");
    out << j.dump() << '\n';
  }
  return out.str();
}

}  // namespace

TEST_CASE("run config parsing") {
  SUBCASE("accepts the reference document and round-trips") {
    const json doc = tiny_config_json("out");
    const RunConfig cfg = RunConfig::from_json(doc);
    CHECK(cfg.environment == "pendulum");
    CHECK(cfg.agent.batch_size == 16);
    CHECK(cfg.pqc.num_qubits == 2);
    const RunConfig again = RunConfig::from_json(cfg.to_json());
    CHECK(again == cfg);
  }
  SUBCASE("rejects unknown keys with the offending path") {
    json doc = tiny_config_json("out");
    doc["agent"]["learning_rate"] = 1e-3;
    CHECK_THROWS_WITH_AS(RunConfig::from_json(doc),
                         "unknown config key: agent.learning_rate", ConfigError);
    json doc2 = tiny_config_json("out");
    doc2["extra"] = 1;
    CHECK_THROWS_AS(RunConfig::from_json(doc2), ConfigError);
  }
  SUBCASE("validates field ranges") {
    json doc = tiny_config_json("out");
    doc["agent"]["gamma"] = 1.5;
    RunConfig cfg = RunConfig::from_json(doc);
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    json doc2 = tiny_config_json("out");
    doc2["variant"] = "quantum";
    RunConfig cfg2 = RunConfig::from_json(doc2);
    CHECK_THROWS_AS(cfg2.validate(), ConfigError);
  }
  SUBCASE("dotted overrides reach nested keys and parse literals") {
    json doc = tiny_config_json("out");
    apply_override(doc, "agent.lr=0.001");
    apply_override(doc, "run.total_steps=123");
    apply_override(doc, "environment=reacher");
    const RunConfig cfg = RunConfig::from_json(doc);
    CHECK(cfg.agent.lr == 0.001);
    CHECK(cfg.total_steps == 123);
    CHECK(cfg.environment == "reacher");
    CHECK_THROWS_AS(apply_override(doc, "no_equals_sign"), ConfigError);
  }
  SUBCASE("missing file names the path") {
    try {
      load_run_config("/nonexistent/conf.json", {});
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("/nonexistent/conf.json") != std::string::npos);
    }
  }
}

TEST_CASE("output root resolution") {
  const char* saved = std::getenv("HQRL_OUTPUT_ROOT");
  setenv("HQRL_OUTPUT_ROOT", "/tmp/hqrl_root", 1);
  CHECK(resolve_output_dir("runs/x") == "/tmp/hqrl_root/runs/x");
  CHECK(resolve_output_dir("/abs/path") == "/abs/path");
  unsetenv("HQRL_OUTPUT_ROOT");
  CHECK(resolve_output_dir("runs/x") == "runs/x");
  if (saved) setenv("HQRL_OUTPUT_ROOT", saved, 1);
}

TEST_CASE("csv schemas are pinned") {
  CHECK(std::string(rl::MetricsStream::kSummaryHeader) ==
        "episode,mean_return,policy_loss,bce_loss,pqc_calls,minutes");
  CHECK(std::string(rl::MetricsStream::kAggregateHeader) ==
        "step,mean_return,std_return,rolling_mean_return,ci95_lo,ci95_hi");
  CHECK(std::string(kAblationHeader) ==
        "variant,shots,qubits,mean_return,std_return,best_return,minutes,pqc_calls,"
        "status");
}

TEST_CASE("aggregate csv matches an independent recomputation") {
  // Synthetic eval histories for three seeds.
  std::vector<std::vector<rl::EvalRecord>> per_seed(3);
  for (int s = 0; s < 3; ++s) {
    for (int p = 0; p < 5; ++p) {
      rl::EvalRecord r;
      r.step = (p + 1) * 100;
      r.mean_return = 10.0 * s + p * p;  // arbitrary but deterministic
      per_seed[s].push_back(r);
    }
  }
  const std::string dir = make_temp_dir("agg");
  const std::string path = dir + "/aggregate.csv";
  rl::MetricsStream::write_aggregate_csv(per_seed, path, 2);

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == rl::MetricsStream::kAggregateHeader);
  std::vector<double> rolling_means;
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(std::stod(cell));
    REQUIRE(cells.size() == 6);
    // Independent recomputation.
    double mean = 0.0;
    for (int s = 0; s < 3; ++s) mean += per_seed[s][row].mean_return;
    mean /= 3.0;
    double var = 0.0;
    for (int s = 0; s < 3; ++s) {
      var += std::pow(per_seed[s][row].mean_return - mean, 2);
    }
    const double sd = std::sqrt(var / 2.0);
    CHECK(cells[0] == doctest::Approx((row + 1) * 100));
    CHECK(cells[1] == doctest::Approx(mean));
    CHECK(cells[2] == doctest::Approx(sd));
    rolling_means.push_back(cells[3]);
    const double half = 1.96 * sd / std::sqrt(3.0);
    CHECK(cells[4] == doctest::Approx(mean - half));
    CHECK(cells[5] == doctest::Approx(mean + half));
    ++row;
  }
  CHECK(row == 5);
  // Window-2 rolling average of the per-point means.
  CHECK(rolling_means[0] == doctest::Approx(10.0 + 0.0));
  CHECK(rolling_means[1] == doctest::Approx((10.0 + 11.0) / 2.0));
  CHECK(rolling_means[2] == doctest::Approx((11.0 + 14.0) / 2.0));
}

TEST_CASE("zero-budget run writes valid empty artifacts") {
  const std::string dir = make_temp_dir("zero");
  const std::string config_path = write_config(tiny_config_json(dir + "/out"), dir);
  const int status = cmd_train(TrainArgs{config_path, {}, std::nullopt});
  CHECK(status == kExitOk);
  CHECK(fs::exists(dir + "/out/manifest.json"));
  CHECK(fs::exists(dir + "/out/metrics_seed0.jsonl"));
  CHECK(fs::file_size(dir + "/out/metrics_seed0.jsonl") == 0);
  std::ifstream agg(dir + "/out/aggregate.csv");
  std::string header;
  std::getline(agg, header);
  CHECK(header == rl::MetricsStream::kAggregateHeader);

  // The manifest's embedded config reparses to an equal RunConfig.
  std::ifstream min(dir + "/out/manifest.json");
  json manifest;
  min >> manifest;
  const RunConfig embedded = RunConfig::from_json(manifest.at("config"));
  const RunConfig original = load_run_config(config_path, {});
  CHECK(embedded == original);
  fs::remove_all(dir);
}

TEST_CASE("cli: bench-cost reproduces the documented budgets") {
  SUBCASE("light budget") {
    const CommandResult res = run_cli(
        "bench-cost --inputs 220 --outputs 10 --shots 10 --batch-size 256 "
        "--updates 750000 --per-shot-time 0.6e-6");
    CHECK(res.exit_code == 0);
    const json doc = json::parse(res.output);
    CHECK(doc.at("parameter_shift").at("total_shots_per_update") == 5632000);
    CHECK(std::abs(doc.at("parameter_shift").at("total_seconds_per_update").get<double>() -
                   3.3792) < 1e-9);
  }
  SUBCASE("heavy budget") {
    const CommandResult res = run_cli(
        "bench-cost --inputs 220 --outputs 10 --shots 1000 --batch-size 256 "
        "--updates 1 --per-shot-time 0.5e-6");
    CHECK(res.exit_code == 0);
    const json doc = json::parse(res.output);
    CHECK(std::abs(doc.at("parameter_shift").at("total_seconds_per_update").get<double>() -
                   281.6) < 1e-9);
  }
  SUBCASE("non-positive flags exit 2") {
    const CommandResult res = run_cli("bench-cost --shots 0");
    CHECK(res.exit_code == 2);
  }
}

TEST_CASE("cli: verify-gradients passes and the corrupted shift fails") {
  const CommandResult good = run_cli("verify-gradients --circuits 3 --net-probes 10");
  CHECK(good.exit_code == 0);
  CHECK(good.output.find("PASS") != std::string::npos);
  CHECK(good.output.find("0.4330127") != std::string::npos);

  const CommandResult bad = run_cli(
      "verify-gradients --circuits 3 --net-probes 5 --shift-angle 0.785398163");
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("FAIL") != std::string::npos);
}

TEST_CASE("cli: missing config exits 2 and names the path") {
  const CommandResult res = run_cli("train --config /definitely/not/here.json");
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("/definitely/not/here.json") != std::string::npos);
}

TEST_CASE("cli: tiny train run is byte-reproducible modulo wall time") {
  const std::string dir = make_temp_dir("repro");
  json doc = tiny_config_json(dir + "/a");
  doc["run"]["total_steps"] = 120;
  const std::string config_path = write_config(doc, dir);

  const CommandResult first = run_cli("train --config " + config_path);
  CHECK(first.exit_code == 0);
  doc["run"]["output_dir"] = dir + "/b";
  write_config(doc, dir);
  const CommandResult second = run_cli("train --config " + config_path);
  CHECK(second.exit_code == 0);

  CHECK(canonical_metrics(dir + "/a/metrics_seed0.jsonl") ==
        canonical_metrics(dir + "/b/metrics_seed0.jsonl"));
  CHECK(!canonical_metrics(dir + "/a/metrics_seed0.jsonl").empty());
  fs::remove_all(dir);
}

TEST_CASE("cli: eval and fidelity-report consume checkpoints") {
  const std::string dir = make_temp_dir("ckpt");
  // Produce a pqc-variant checkpoint with a few recorded fits.
  rl::AgentConfig acfg;
  acfg.batch_size = 16;
  acfg.warmup_steps = 20;
  acfg.actor_hidden = 8;
  acfg.critic_hidden = 8;
  acfg.clink_dim = 3;
  pqc::PqcConfig pcfg{2, 1, 8, {}, pqc::OutputMode::marginal};
  surrogate::SurrogateConfig scfg;
  scfg.hidden_width = 8;
  scfg.tiny_batches = 2;
  scfg.tiny_batch_size = 8;
  rl::Agent agent(acfg, pcfg, rl::MiddleVariant::pqc, scfg, rl::make_env("pendulum"),
                  0);
  agent.train(40, 0, 1, 0, "", nullptr);
  const std::string ckpt = dir + "/ckpt.json";
  agent.save_checkpoint(ckpt);

  const CommandResult ev = run_cli("eval --checkpoint " + ckpt + " --episodes 2");
  CHECK(ev.exit_code == 0);
  CHECK(json::parse(ev.output).contains("mean_return"));

  const std::string report_path = dir + "/fidelity.json";
  const CommandResult fid = run_cli("fidelity-report --checkpoint " + ckpt +
                                    " --probes 4 --output " + report_path);
  CHECK(fid.exit_code == 0);
  std::ifstream rin(report_path);
  json reports;
  rin >> reports;
  REQUIRE(reports.is_array());
  REQUIRE(!reports.empty());
  for (const auto& r : reports) {
    CHECK(r.contains("eps1"));
    CHECK(r.contains("eps2"));
    CHECK(r.contains("radius"));
    CHECK(r.contains("bce_at_fit"));
  }

  const CommandResult missing = run_cli("fidelity-report --checkpoint /no/ckpt.json");
  CHECK(missing.exit_code == 2);
  fs::remove_all(dir);
}
