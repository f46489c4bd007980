#include "hqrl/cli/commands.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "hqrl/grad/cost_model.hpp"
#include "hqrl/grad/oracles.hpp"
#include "hqrl/nn/serialize.hpp"

namespace hqrl::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void write_atomic(const std::string& path, const std::string& payload) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << payload;
  }
  fs::rename(tmp, path);
}

}  // namespace

SeedRunResult run_one_seed(const RunConfig& cfg, std::uint64_t seed,
                           const std::string& out_dir) {
  fs::create_directories(out_dir);
  fs::create_directories(fs::path(out_dir) / "checkpoints");

  SeedRunResult res;
  res.seed = seed;
  res.metrics_path =
      (fs::path(out_dir) / ("metrics_seed" + std::to_string(seed) + ".jsonl")).string();
  res.summary_path =
      (fs::path(out_dir) / ("summary_seed" + std::to_string(seed) + ".csv")).string();
  const std::string ckpt_prefix =
      (fs::path(out_dir) / "checkpoints" / ("seed" + std::to_string(seed) + "_"))
          .string();
  res.checkpoint_path = ckpt_prefix + "final.json";

  rl::MetricsStream metrics(res.metrics_path);
  rl::Agent agent(cfg.agent, cfg.pqc, rl::middle_variant_from_name(cfg.variant),
                  cfg.surrogate, rl::make_env(cfg.environment), seed);

  const auto t0 = std::chrono::steady_clock::now();
  agent.train(cfg.total_steps, cfg.eval_interval, cfg.eval_episodes,
              cfg.checkpoint_interval, ckpt_prefix, &metrics);
  res.minutes =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() /
      60.0;

  metrics.write_summary_csv(res.summary_path);
  res.pqc_calls = agent.train_counter().pqc_calls();
  res.evals = metrics.evals();
  if (!res.evals.empty()) {
    res.has_final_eval = true;
    res.final_eval_mean = res.evals.back().mean_return;
    res.final_eval_std = res.evals.back().std_return;
  }
  return res;
}

int cmd_train(const TrainArgs& args) {
  RunConfig cfg = load_run_config(args.config_path, args.overrides);
  if (args.seed) cfg.seeds = {*args.seed};
  const std::string out_dir = resolve_output_dir(cfg.output_dir);
  const std::string started = iso_timestamp();

  std::vector<SeedRunResult> results;
  std::vector<std::vector<rl::EvalRecord>> per_seed_evals;
  for (const std::uint64_t seed : cfg.seeds) {
    std::cout << "training seed " << seed << " (" << cfg.variant << ", "
              << cfg.environment << ", " << cfg.total_steps << " steps)\n";
    SeedRunResult res = run_one_seed(cfg, seed, out_dir);
    per_seed_evals.push_back(res.evals);
    results.push_back(std::move(res));
  }

  const std::string aggregate_path = (fs::path(out_dir) / "aggregate.csv").string();
  rl::MetricsStream::write_aggregate_csv(per_seed_evals, aggregate_path);

  json seeds = json::array();
  for (const SeedRunResult& r : results) {
    json entry{{"seed", r.seed},
               {"metrics", fs::path(r.metrics_path).filename().string()},
               {"summary", fs::path(r.summary_path).filename().string()},
               {"checkpoint",
                fs::relative(r.checkpoint_path, out_dir).string()},
               {"minutes", r.minutes},
               {"pqc_calls", r.pqc_calls}};
    if (r.has_final_eval) {
      entry["final_eval_mean"] = r.final_eval_mean;
      entry["final_eval_std"] = r.final_eval_std;
    }
    seeds.push_back(entry);
  }
  const json manifest{{"version", "0.1.0"},
                      {"config", cfg.to_json()},
                      {"started", started},
                      {"finished", iso_timestamp()},
                      {"aggregate", "aggregate.csv"},
                      {"seeds", seeds}};
  write_atomic((fs::path(out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");
  std::cout << "wrote " << out_dir << "/manifest.json\n";
  return kExitOk;
}

namespace {

struct AblationCell {
  std::string variant;
  int shots = 0;   // 0 for classical variants (display convention)
  int qubits = 0;
};

}  // namespace

int cmd_ablate(const AblateArgs& args) {
  RunConfig cfg = load_run_config(args.config_path, args.overrides);
  const std::string out_dir = resolve_output_dir(cfg.output_dir);
  fs::create_directories(out_dir);

  std::vector<std::string> variants = cfg.ablate_variants;
  if (variants.empty()) variants = {"pqc", "fc", "rbg", "zero"};
  std::vector<int> qubit_grid = cfg.ablate_qubits;
  if (qubit_grid.empty()) qubit_grid = {cfg.pqc.num_qubits};
  std::vector<int> shot_grid = cfg.ablate_shots;
  if (shot_grid.empty()) shot_grid = {cfg.pqc.shots};

  std::vector<AblationCell> cells;
  for (const std::string& v : variants) {
    if (rl::middle_variant_from_name(v) == rl::MiddleVariant::pqc) {
      for (const int q : qubit_grid) {
        for (const int s : shot_grid) cells.push_back({v, s, q});
      }
    } else {
      cells.push_back({v, 0, 0});
    }
  }

  std::ostringstream csv;
  csv << std::setprecision(12) << kAblationHeader << '\n';
  for (const AblationCell& cell : cells) {
    RunConfig cell_cfg = cfg;
    cell_cfg.variant = cell.variant;
    if (cell.qubits > 0) cell_cfg.pqc.num_qubits = cell.qubits;
    if (cell.shots > 0) cell_cfg.pqc.shots = cell.shots;
    const std::string cell_name = cell.variant +
                                  (cell.qubits > 0 ? "_q" + std::to_string(cell.qubits) : "") +
                                  (cell.shots > 0 ? "_s" + std::to_string(cell.shots) : "");
    const std::string cell_dir = (fs::path(out_dir) / cell_name).string();
    std::cout << "ablation cell " << cell_name << "\n";
    try {
      std::vector<double> finals;
      double minutes = 0.0;
      std::uint64_t pqc_calls = 0;
      for (const std::uint64_t seed : cell_cfg.seeds) {
        SeedRunResult res = run_one_seed(cell_cfg, seed, cell_dir);
        finals.push_back(res.has_final_eval ? res.final_eval_mean : 0.0);
        minutes += res.minutes;
        pqc_calls = res.pqc_calls;
      }
      minutes /= static_cast<double>(cell_cfg.seeds.size());
      double mean = 0.0;
      for (const double f : finals) mean += f;
      mean /= static_cast<double>(finals.size());
      double var = 0.0;
      for (const double f : finals) var += (f - mean) * (f - mean);
      const double stddev =
          finals.size() > 1 ? std::sqrt(var / (finals.size() - 1)) : 0.0;
      const double best = *std::max_element(finals.begin(), finals.end());
      csv << cell.variant << ',' << cell.shots << ',' << cell.qubits << ',' << mean
          << ',' << stddev << ',' << best << ',' << minutes << ',' << pqc_calls
          << ",ok\n";
    } catch (const std::exception& e) {
      std::cerr << "cell " << cell_name << " failed: " << e.what() << "\n";
      csv << cell.variant << ',' << cell.shots << ',' << cell.qubits
          << ",,,,,,failed\n";
    }
  }
  write_atomic((fs::path(out_dir) / "ablation.csv").string(), csv.str());
  std::cout << "wrote " << out_dir << "/ablation.csv\n";
  return kExitOk;
}

namespace {

// Max relative gradient error of the net over `probes` randomly chosen
// parameters, against central finite differences of a random linear readout.
double net_gradcheck(nn::DenseNet& net, int probes, double h, Rng& rng) {
  const int in_dim = net.input_dim();
  const int out_dim = net.output_dim();
  std::vector<double> x(static_cast<std::size_t>(in_dim));
  for (double& v : x) v = rng.normal();
  std::vector<double> w(static_cast<std::size_t>(out_dim));
  for (double& v : w) v = rng.normal();

  nn::Tape tape;
  net.forward(x, &tape);
  const nn::DenseNet::Gradients grads = net.backward(tape, w);

  const auto readout = [&]() {
    const std::vector<double> y = net.forward(x);
    double acc = 0.0;
    for (int k = 0; k < out_dim; ++k) acc += w[static_cast<std::size_t>(k)] * y[static_cast<std::size_t>(k)];
    return acc;
  };

  double worst = 0.0;
  for (int p = 0; p < probes; ++p) {
    const std::size_t j = rng.uniform_index(net.param_count());
    const double original = net.params()[j];
    net.params()[j] = original + h;
    const double lp = readout();
    net.params()[j] = original - h;
    const double lm = readout();
    net.params()[j] = original;
    const double fd = (lp - lm) / (2.0 * h);
    const double an = grads.params[j];
    const double rel = std::abs(an - fd) / std::max({1.0, std::abs(an), std::abs(fd)});
    worst = std::max(worst, rel);
  }
  return worst;
}

}  // namespace

int cmd_verify_gradients(const VerifyGradientsArgs& args) {
  bool ok = true;
  Rng rng(args.seed);

  // Parameter-shift vs central finite differences on random circuits.
  pqc::PqcConfig cfg{args.qubits, args.layers, 1, {}, pqc::OutputMode::marginal};
  double worst_pair = 0.0;
  for (int c = 0; c < args.circuits; ++c) {
    std::vector<double> raw(static_cast<std::size_t>(cfg.control_dim()));
    for (double& v : raw) v = rng.normal();
    const pqc::ControlVector q_i = pqc::encode_controls(raw, cfg);
    const grad::Jacobian fd = grad::finite_diff_jacobian(q_i, cfg, args.fd_step);
    const grad::Jacobian ps = grad::parameter_shift_jacobian(q_i, cfg, args.shift);
    worst_pair = std::max(worst_pair, grad::max_abs_diff(fd, ps));
  }
  std::printf("parameter-shift vs finite-difference (N=%d, M=%d, %d circuits): max dev %.3e\n",
              args.qubits, args.layers, args.circuits, worst_pair);
  if (worst_pair >= 1e-6) {
    std::printf("FAIL: oracle disagreement %.3e exceeds 1e-6\n", worst_pair);
    ok = false;
  }

  // Single-qubit closed form dp/dtheta = sin(theta)/2 at theta = pi/3.
  {
    pqc::PqcConfig one{1, 1, 1, {}, pqc::OutputMode::marginal};
    pqc::ControlVector q_i{1, 1, {M_PI / 3.0, 0.0, 0.0, 0.0}};
    const grad::Jacobian ps = grad::parameter_shift_jacobian(q_i, one, args.shift);
    const double expected = std::sin(M_PI / 3.0) / 2.0;
    std::printf("single-qubit dp/dtheta at theta=pi/3: %.7f (closed form %.7f)\n",
                ps.at(0, 0), expected);
    if (std::abs(ps.at(0, 0) - expected) >= 1e-10) {
      std::printf("FAIL: single-qubit derivative off by %.3e\n",
                  std::abs(ps.at(0, 0) - expected));
      ok = false;
    }
  }

  // Analytic vs finite-difference gradients for the artifact's net topologies.
  const struct {
    const char* name;
    std::vector<int> sizes;
    nn::Activation out;
  } topologies[] = {
      {"pre [376,256,230]", {376, 256, 230}, nn::Activation::linear},
      {"surrogate [220,2048,10]", {220, 2048, 10}, nn::Activation::sigmoid},
      {"post [20,256,17]", {20, 256, 17}, nn::Activation::tanh},
      {"critic trunk [376,256]", {376, 256}, nn::Activation::leaky_relu},
      {"critic head [273,256,1]", {273, 256, 1}, nn::Activation::linear},
  };
  for (const auto& t : topologies) {
    nn::DenseNet net(t.sizes, t.out, rng);
    const double worst = net_gradcheck(net, args.net_probes, 1e-5, rng);
    std::printf("net gradcheck %-26s max rel dev %.3e\n", t.name, worst);
    if (worst >= 1e-4) {
      std::printf("FAIL: %s gradient deviation %.3e exceeds 1e-4\n", t.name, worst);
      ok = false;
    }
  }

  std::printf(ok ? "PASS\n" : "FAIL\n");
  return ok ? kExitOk : kExitVerifyFail;
}

int cmd_fidelity_report(const FidelityReportArgs& args) {
  std::ifstream in(args.checkpoint_path);
  if (!in) throw ConfigError("missing checkpoint: " + args.checkpoint_path);
  json ck;
  try {
    ck = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(args.checkpoint_path + ": " + e.what());
  }
  if (!ck.contains("nets") || !ck.at("nets").contains("qtdnn")) {
    throw ConfigError("checkpoint has no fitted surrogate: " + args.checkpoint_path);
  }
  const nn::DenseNet qtdnn = nn::net_from_json(ck.at("nets").at("qtdnn"));
  pqc::PqcConfig cfg;
  const auto& p = ck.at("pqc");
  cfg.num_qubits = p.at("num_qubits");
  cfg.num_layers = p.at("num_layers");
  cfg.shots = p.at("shots");
  cfg.output_mode = pqc::output_mode_from_name(p.at("output_mode"));

  Rng rng(args.seed);
  json reports = json::array();
  for (const auto& f : ck.at("fit_history")) {
    const pqc::ControlVector center{cfg.num_qubits, cfg.num_layers,
                                    f.at("center").get<std::vector<double>>()};
    const double radius = f.at("radius").get<double>();
    const surrogate::FidelityReport rep =
        surrogate::fidelity_report(qtdnn, cfg, center, radius, args.probes, rng);
    json entry = rep.to_json();
    entry.erase("center");  // bulky and already in the checkpoint
    entry["step"] = f.at("step");
    entry["bce_at_fit"] = f.at("bce");
    reports.push_back(entry);
  }
  const std::string payload = reports.dump(2) + "\n";
  if (args.output_path.empty()) {
    std::cout << payload;
  } else {
    write_atomic(args.output_path, payload);
    std::cout << "wrote " << args.output_path << "\n";
  }
  return kExitOk;
}

int cmd_bench_cost(const BenchCostArgs& args) {
  if (args.inputs <= 0 || args.outputs <= 0 || args.shots <= 0 ||
      args.batch_size <= 0 || args.updates <= 0 || !(args.per_shot_seconds > 0.0)) {
    throw ConfigError("bench-cost: all flags must be positive");
  }
  const grad::ShiftCostReport report = grad::shift_cost_report(
      static_cast<std::uint64_t>(args.inputs), static_cast<std::uint64_t>(args.outputs),
      static_cast<std::uint64_t>(args.shots),
      static_cast<std::uint64_t>(args.batch_size),
      static_cast<std::uint64_t>(args.updates), args.per_shot_seconds);
  std::cout << report.to_json().dump(2) << "\n";
  return kExitOk;
}

int cmd_eval(const EvalArgs& args) {
  if (!fs::exists(args.checkpoint_path)) {
    throw ConfigError("missing checkpoint: " + args.checkpoint_path);
  }
  rl::Agent agent = rl::Agent::load_checkpoint(args.checkpoint_path);
  const rl::EvalResult res = agent.evaluate(args.episodes);
  const json out{{"mean_return", res.mean_return},
                 {"std_return", res.std_return},
                 {"episodes", res.episodes},
                 {"eval_pqc_calls", agent.eval_counter().pqc_calls()}};
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

}  // namespace hqrl::cli
