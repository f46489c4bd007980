#include "hqrl/pqc/layer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace hqrl::pqc {

std::string output_mode_name(OutputMode mode) {
  return mode == OutputMode::marginal ? "marginal" : "most_probable_bitstring";
}

OutputMode output_mode_from_name(const std::string& name) {
  if (name == "marginal") return OutputMode::marginal;
  if (name == "most_probable_bitstring") return OutputMode::most_probable_bitstring;
  throw std::invalid_argument("unknown output mode: " + name);
}

void PqcConfig::validate() const {
  if (num_qubits < 1 || num_qubits > quantum::kMaxQubits) {
    throw std::invalid_argument("pqc: num_qubits must be in [1, " +
                                std::to_string(quantum::kMaxQubits) + "]");
  }
  if (num_layers < 1) throw std::invalid_argument("pqc: num_layers must be >= 1");
  if (shots < 1) throw std::invalid_argument("pqc: shots must be >= 1");
  noise.validate();
}

ControlVector encode_controls(std::span<const double> raw, const PqcConfig& config) {
  config.validate();
  if (static_cast<int>(raw.size()) != config.control_dim()) {
    throw std::invalid_argument(
        "encode_controls: expected " + std::to_string(config.control_dim()) +
        " raw controls, got " + std::to_string(raw.size()));
  }
  ControlVector cv{config.num_qubits, config.num_layers,
                   std::vector<double>(raw.begin(), raw.end())};
  const int angles = config.angle_dim();
  for (int i = 0; i < angles; ++i) {
    cv.values[static_cast<std::size_t>(i)] = M_PI * std::tanh(raw[i]);
  }
  return cv;
}

namespace {

int decode_one(double raw, int num_qubits) {
  double t = std::tanh(raw);
  if (std::isnan(t)) t = 0.0;
  const double scaled = (num_qubits - 1) * (t + 1.0) / 2.0;
  const double clamped = std::clamp(scaled, 0.0, static_cast<double>(num_qubits - 1));
  return static_cast<int>(std::llround(clamped));
}

void check_controls(const ControlVector& q_i, const PqcConfig& config,
                    const char* op) {
  if (q_i.num_qubits != config.num_qubits || q_i.num_layers != config.num_layers ||
      q_i.size() != config.control_dim()) {
    throw std::invalid_argument(std::string(op) +
                                ": control vector does not match PQC config");
  }
}

void inject_fault(quantum::StateVector& sv, int qubit,
                  const quantum::NoiseConfig& noise, Rng& rng) {
  switch (quantum::sample_pauli_error(noise, rng)) {
    case quantum::PauliError::none:
      break;
    case quantum::PauliError::x:
      quantum::apply_pauli_x(sv, qubit);
      break;
    case quantum::PauliError::z:
      quantum::apply_pauli_z(sv, qubit);
      break;
    case quantum::PauliError::xz:
      quantum::apply_pauli_x(sv, qubit);
      quantum::apply_pauli_z(sv, qubit);
      break;
  }
}

}  // namespace

std::pair<int, int> decode_entangler(double raw_p, double raw_k, int num_qubits) {
  if (num_qubits < 1) throw std::invalid_argument("decode_entangler: N must be >= 1");
  return {decode_one(raw_p, num_qubits), decode_one(raw_k, num_qubits)};
}

quantum::StateVector execute_circuit(const ControlVector& q_i,
                                     const PqcConfig& config, Rng* noise_rng) {
  check_controls(q_i, config, "execute_circuit");
  quantum::StateVector sv = quantum::init_zero_state(config.num_qubits);
  for (int layer = 0; layer < config.num_layers; ++layer) {
    for (int q = 0; q < config.num_qubits; ++q) {
      quantum::apply_rotation(sv, q, q_i.theta(layer, q), q_i.phi(layer, q));
      if (noise_rng) inject_fault(sv, q, config.noise, *noise_rng);
    }
    const auto [raw_p, raw_k] = q_i.raw_entangler(layer);
    const auto [p, k] = decode_entangler(raw_p, raw_k, config.num_qubits);
    if (p != k) {
      quantum::apply_cz(sv, p, k);
      if (noise_rng) {
        inject_fault(sv, p, config.noise, *noise_rng);
        inject_fault(sv, k, config.noise, *noise_rng);
      }
    }
  }
  return sv;
}

MarginalVector run_quantum_layer(const ControlVector& q_i, const PqcConfig& config,
                                 Rng& rng, CallCounter& counter) {
  config.validate();
  check_controls(q_i, config, "run_quantum_layer");
  const bool noisy = !config.noise.is_zero();
  const auto executor = [&](Rng& shot_rng) {
    return execute_circuit(q_i, config, noisy ? &shot_rng : nullptr);
  };
  const std::uint64_t seed = rng.next_u64();
  const quantum::ShotRecord record =
      quantum::sample_shots(executor, config.shots, config.noise, seed);
  counter.record_call(config.shots);
  if (config.output_mode == OutputMode::most_probable_bitstring) {
    return modal_bitstring(record);
  }
  return quantum::empirical_marginals(record);
}

MarginalVector exact_layer_map(const ControlVector& q_i, const PqcConfig& config) {
  check_controls(q_i, config, "exact_layer_map");
  return quantum::exact_marginals(execute_circuit(q_i, config, nullptr));
}

std::vector<double> modal_bitstring(const quantum::ShotRecord& record) {
  if (record.bitstrings.empty()) {
    throw std::invalid_argument("modal_bitstring: empty shot record");
  }
  std::map<std::uint32_t, int> counts;
  for (const std::uint32_t b : record.bitstrings) ++counts[b];
  std::uint32_t best = 0;
  int best_count = -1;
  for (const auto& [bits, count] : counts) {
    if (count > best_count) {  // map iterates in index order, so ties keep the lowest
      best = bits;
      best_count = count;
    }
  }
  std::vector<double> out(record.num_qubits);
  for (int q = 0; q < record.num_qubits; ++q) out[q] = (best >> q) & 1u;
  return out;
}

nlohmann::json circuit_to_json(const ControlVector& q_i, const PqcConfig& config) {
  check_controls(q_i, config, "circuit_to_json");
  nlohmann::json layers = nlohmann::json::array();
  for (int layer = 0; layer < config.num_layers; ++layer) {
    nlohmann::json theta = nlohmann::json::array();
    nlohmann::json phi = nlohmann::json::array();
    for (int q = 0; q < config.num_qubits; ++q) {
      theta.push_back(q_i.theta(layer, q));
      phi.push_back(q_i.phi(layer, q));
    }
    const auto [raw_p, raw_k] = q_i.raw_entangler(layer);
    const auto [p, k] = decode_entangler(raw_p, raw_k, config.num_qubits);
    layers.push_back({{"theta", theta},
                      {"phi", phi},
                      {"entangler", {p, k}},
                      {"cz_applied", p != k}});
  }
  return nlohmann::json{{"num_qubits", config.num_qubits},
                        {"num_layers", config.num_layers},
                        {"shots", config.shots},
                        {"output_mode", output_mode_name(config.output_mode)},
                        {"layers", layers}};
}

}  // namespace hqrl::pqc
