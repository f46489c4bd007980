#include "hqrl/nn/serialize.hpp"

namespace hqrl::nn {

nlohmann::json net_to_json(const DenseNet& net) {
  return nlohmann::json{{"layer_sizes", net.layer_sizes()},
                        {"output_activation", activation_name(net.output_activation())},
                        {"params", net.params()}};
}

DenseNet net_from_json(const nlohmann::json& j) {
  return DenseNet(j.at("layer_sizes").get<std::vector<int>>(),
                  activation_from_name(j.at("output_activation").get<std::string>()),
                  j.at("params").get<std::vector<double>>());
}

nlohmann::json adam_to_json(const AdamState& state) {
  return nlohmann::json{{"lr", state.config.lr},
                        {"beta1", state.config.beta1},
                        {"beta2", state.config.beta2},
                        {"eps", state.config.eps},
                        {"step", state.step},
                        {"m", state.m},
                        {"v", state.v}};
}

AdamState adam_from_json(const nlohmann::json& j) {
  AdamState state;
  state.config.lr = j.at("lr").get<double>();
  state.config.beta1 = j.at("beta1").get<double>();
  state.config.beta2 = j.at("beta2").get<double>();
  state.config.eps = j.at("eps").get<double>();
  state.step = j.at("step").get<std::uint64_t>();
  state.m = j.at("m").get<std::vector<double>>();
  state.v = j.at("v").get<std::vector<double>>();
  return state;
}

nlohmann::json training_state_to_json(const DenseNet& net, const AdamState& opt,
                                      const Rng& rng) {
  return nlohmann::json{{"net", net_to_json(net)},
                        {"optimizer", adam_to_json(opt)},
                        {"rng", rng.serialize()}};
}

void training_state_from_json(const nlohmann::json& j, DenseNet& net, AdamState& opt,
                              Rng& rng) {
  net = net_from_json(j.at("net"));
  opt = adam_from_json(j.at("optimizer"));
  rng.deserialize(j.at("rng").get<std::string>());
}

}  // namespace hqrl::nn
