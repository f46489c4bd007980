#pragma once

#include "json.hpp"

#include "hqrl/nn/dense_net.hpp"
#include "hqrl/nn/optim.hpp"
#include "hqrl/rng.hpp"

namespace hqrl::nn {

nlohmann::json net_to_json(const DenseNet& net);
DenseNet net_from_json(const nlohmann::json& j);

nlohmann::json adam_to_json(const AdamState& state);
AdamState adam_from_json(const nlohmann::json& j);

// One self-contained document: topology, parameters, optimizer moments and
// RNG state — enough for exact resume.
nlohmann::json training_state_to_json(const DenseNet& net, const AdamState& opt,
                                      const Rng& rng);
void training_state_from_json(const nlohmann::json& j, DenseNet& net,
                              AdamState& opt, Rng& rng);

}  // namespace hqrl::nn
