#include "hqrl/quantum/sampling.hpp"

#include <algorithm>
#include <stdexcept>

namespace hqrl::quantum {

namespace {

// First basis index whose cumulative probability exceeds u; clamps to the
// last index so a slightly sub-unit norm cannot fall off the end.
std::uint32_t sample_outcome(const StateVector& sv, double u) {
  const auto& amps = sv.amplitudes();
  double cum = 0.0;
  for (std::size_t b = 0; b + 1 < amps.size(); ++b) {
    cum += std::norm(amps[b]);
    if (u < cum) return static_cast<std::uint32_t>(b);
  }
  return static_cast<std::uint32_t>(amps.size() - 1);
}

}  // namespace

ShotRecord sample_shots(const std::function<StateVector(Rng&)>& execute_circuit,
                        int shots, const NoiseConfig& noise, std::uint64_t seed) {
  if (shots < 1) {
    throw std::invalid_argument("sample_shots: shot count must be >= 1");
  }
  noise.validate();

  ShotRecord record;
  record.bitstrings.resize(static_cast<std::size_t>(shots));

  if (noise.is_zero()) {
    Rng state_rng(derive_seed(seed, 0));
    const StateVector sv = execute_circuit(state_rng);
    record.num_qubits = sv.num_qubits();

    std::vector<double> prefix(sv.dim());
    double cum = 0.0;
    for (std::size_t b = 0; b < sv.dim(); ++b) {
      cum += std::norm(sv.amp(b));
      prefix[b] = cum;
    }
#pragma omp parallel for schedule(static) if (shots >= 4096)
    for (int s = 0; s < shots; ++s) {
      Rng shot_rng(derive_seed(seed, static_cast<std::uint64_t>(s) + 1));
      const double u = shot_rng.uniform();
      const auto it = std::upper_bound(prefix.begin(), prefix.end(), u);
      const std::size_t idx = std::min<std::size_t>(
          static_cast<std::size_t>(it - prefix.begin()), sv.dim() - 1);
      record.bitstrings[static_cast<std::size_t>(s)] =
          static_cast<std::uint32_t>(idx);
    }
    return record;
  }

  int num_qubits = 0;
#pragma omp parallel for schedule(static) if (shots >= 8)
  for (int s = 0; s < shots; ++s) {
    Rng shot_rng(derive_seed(seed, static_cast<std::uint64_t>(s) + 1));
    const StateVector sv = execute_circuit(shot_rng);
    record.bitstrings[static_cast<std::size_t>(s)] =
        sample_outcome(sv, shot_rng.uniform());
    if (s == 0) num_qubits = sv.num_qubits();
  }
  record.num_qubits = num_qubits;
  return record;
}

std::vector<double> empirical_marginals(const ShotRecord& record) {
  if (record.bitstrings.empty()) {
    throw std::invalid_argument("empirical_marginals: empty shot record");
  }
  std::vector<double> probs(record.num_qubits, 0.0);
  for (const std::uint32_t bits : record.bitstrings) {
    for (int q = 0; q < record.num_qubits; ++q) {
      probs[q] += static_cast<double>((bits >> q) & 1u);
    }
  }
  const double inv = 1.0 / static_cast<double>(record.shots());
  for (double& p : probs) p *= inv;
  return probs;
}

std::vector<double> expectation_view(std::span<const double> marginals) {
  std::vector<double> m(marginals.size());
  for (std::size_t i = 0; i < marginals.size(); ++i) m[i] = 1.0 - 2.0 * marginals[i];
  return m;
}

}  // namespace hqrl::quantum
