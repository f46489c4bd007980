#include <iostream>

#include "CLI11.hpp"

#include "hqrl/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace hqrl::cli;

  CLI::App app{"hqrl: surrogate-trained hybrid quantum-classical RL toolkit"};
  app.require_subcommand(1);

  TrainArgs train_args;
  std::uint64_t train_seed = 0;
  auto* train = app.add_subcommand("train", "run the training loop per seed");
  train->add_option("--config", train_args.config_path, "run config (JSON)")->required();
  train->add_option("--override", train_args.overrides,
                    "config override, section.key=value (repeatable)");
  auto* seed_opt = train->add_option("--seed", train_seed, "single seed override");

  AblateArgs ablate_args;
  auto* ablate = app.add_subcommand("ablate", "run the middle-block ablation grid");
  ablate->add_option("--config", ablate_args.config_path, "run config (JSON)")->required();
  ablate->add_option("--override", ablate_args.overrides,
                     "config override, section.key=value (repeatable)");

  VerifyGradientsArgs vg_args;
  auto* verify = app.add_subcommand("verify-gradients",
                                    "cross-check gradient oracles and net backprop");
  verify->add_option("--qubits", vg_args.qubits, "probe circuit qubits");
  verify->add_option("--layers", vg_args.layers, "probe circuit layers");
  verify->add_option("--circuits", vg_args.circuits, "number of random circuits");
  verify->add_option("--net-probes", vg_args.net_probes, "gradcheck probes per net");
  verify->add_option("--fd-step", vg_args.fd_step, "finite-difference step");
  verify->add_option("--shift-angle", vg_args.shift,
                     "parameter-shift angle (test hook; pi/2 is exact)");
  verify->add_option("--seed", vg_args.seed, "probe seed");

  FidelityReportArgs fid_args;
  auto* fidelity = app.add_subcommand("fidelity-report",
                                      "surrogate output/Jacobian deviation vs the exact map");
  fidelity->add_option("--checkpoint", fid_args.checkpoint_path, "agent checkpoint")
      ->required();
  fidelity->add_option("--probes", fid_args.probes, "probes per recorded fit");
  fidelity->add_option("--output", fid_args.output_path, "output JSON path (default stdout)");
  fidelity->add_option("--seed", fid_args.seed, "probe seed");

  BenchCostArgs bc_args;
  auto* bench = app.add_subcommand("bench-cost",
                                   "parameter-shift vs surrogate quantum-cost model");
  bench->add_option("--inputs", bc_args.inputs, "control dimension I");
  bench->add_option("--outputs", bc_args.outputs, "output dimension O");
  bench->add_option("--shots", bc_args.shots, "shots per circuit S");
  bench->add_option("--batch-size", bc_args.batch_size, "mini-batch size N_b");
  bench->add_option("--updates", bc_args.updates, "update count K");
  bench->add_option("--per-shot-time", bc_args.per_shot_seconds, "seconds per shot");

  EvalArgs eval_args;
  auto* evalc = app.add_subcommand("eval", "evaluate a checkpointed policy");
  evalc->add_option("--checkpoint", eval_args.checkpoint_path, "agent checkpoint")
      ->required();
  evalc->add_option("--episodes", eval_args.episodes, "evaluation episodes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train) {
      if (*seed_opt) train_args.seed = train_seed;
      return cmd_train(train_args);
    }
    if (*ablate) return cmd_ablate(ablate_args);
    if (*verify) return cmd_verify_gradients(vg_args);
    if (*fidelity) return cmd_fidelity_report(fid_args);
    if (*bench) return cmd_bench_cost(bc_args);
    if (*evalc) return cmd_eval(eval_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFail;
  }
  return kExitUsage;
}
