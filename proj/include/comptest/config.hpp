// config.hpp
// JSON configuration for the simulation harness. One config file expands
// into a list of scenario cells (one per sparsity value per scenario block).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "comptest/simgen.hpp"

namespace comptest {

inline constexpr int kConfigSchemaVersion = 1;

struct SimulateConfig {
  double alpha = 0.05;
  int replications = 500;
  std::uint64_t master_seed = 0;
  CombinationWeights weights;
  std::vector<ScenarioConfig> scenarios;
};

// Throws UsageError naming the offending field.
SimulateConfig parse_simulate_config(const nlohmann::json& j);

SimulateConfig load_simulate_config(const std::string& path);

}  // namespace comptest
