#include <algorithm>

#include "pawsim/experiments.hpp"

namespace pawsim::experiments {

namespace {

std::vector<PresetInfo> build_registry() {
  std::vector<PresetInfo> out{
      {"clock_ambiguity", "same universe described in a unitarily rotated clock/rest split",
       "clock ambiguity under repartition", {{"repartition", ParamType::Text}}},
      {"cosmo_toy", "two galaxies exchanging an excitation, switched by an expansion clock",
       "expansion as a clock", {{"regime", ParamType::Text}}},
      {"emergent_basic", "history state of a matched clock and rest, conditioned on the clock",
       "emergent Schroedinger evolution", {{"coupling", ParamType::Real}, {"clock_dim", ParamType::Integer}}},
      {"readability_scan", "probe qubit coupled to the clock reading, swept over coupling strength",
       "interacting clocks", {{"coupling", ParamType::Real}}},
      {"record_arrow", "record qubits flipped in successive clock windows",
       "records and the arrow of time",
       {{"records", ParamType::Integer}, {"clock_dim", ParamType::Integer}, {"coupling", ParamType::Real}}},
      {"size_scan", "clock and rest dimensions swept past the resolvable band",
       "clock/rest size mismatch", {{"clock_dim", ParamType::Integer}, {"rest_dim", ParamType::Integer}}},
  };
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

std::vector<ParamValue> numbers(std::initializer_list<double> v) { return {v.begin(), v.end()}; }
std::vector<ParamValue> names(std::initializer_list<const char*> v) {
  std::vector<ParamValue> out;
  for (const char* s : v) out.emplace_back(std::string(s));
  return out;
}

}  // namespace

const std::vector<PresetInfo>& presets() {
  static const std::vector<PresetInfo> registry = build_registry();
  return registry;
}

const PresetInfo* find_preset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

ExperimentConfig default_config(std::string_view preset) {
  if (!find_preset(preset)) throw Error(ErrorKind::Config, "field 'preset': unknown preset '" + std::string(preset) + "'");
  ExperimentConfig c;
  c.preset = std::string(preset);
  auto& u = c.universe;
  if (preset == "emergent_basic") {
    u.clock_dim = 8;
    u.rest_dims = {2, 2};
    c.sweep = {{"coupling", numbers({0.0})}};
  } else if (preset == "readability_scan") {
    u.clock_dim = 16;
    u.rest_dims = {2, 8};
    c.sweep = {{"coupling", numbers({0.0, 0.005, 0.01, 0.02, 0.05})}};
  } else if (preset == "record_arrow") {
    u.clock_dim = 16;
    u.rest_dims = {2};
    u.coupling = 1.0;
    c.sweep = {{"records", numbers({2, 4})}};
  } else if (preset == "clock_ambiguity") {
    u.clock_dim = 8;
    u.rest_dims = {8};
    c.sweep = {{"repartition", names({"identity", "swap", "local", "random"})}};
  } else if (preset == "size_scan") {
    c.sweep = {{"clock_dim", numbers({2, 4, 8})}, {"rest_dim", numbers({2, 4, 8, 16})}};
  } else if (preset == "cosmo_toy") {
    u.clock_dim = 16;
    u.rest_dims = {2, 2};
    c.sweep = {{"regime", names({"none", "separation", "attraction"})}};
  }
  return c;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const std::string& p = cfg.preset;
  if (p == "emergent_basic") return emergent_basic(cfg);
  if (p == "readability_scan") return readability_scan(cfg);
  if (p == "record_arrow") return record_arrow(cfg);
  if (p == "clock_ambiguity") return clock_ambiguity(cfg);
  if (p == "size_scan") return size_scan(cfg);
  return cosmo_toy(cfg);
}

}  // namespace pawsim::experiments
