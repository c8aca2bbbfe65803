#include "comptest/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "comptest/error.hpp"

namespace comptest {

namespace {

using nlohmann::json;

const json& require_field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw UsageError(std::string("config: missing field '") + key + "'");
  }
  return *it;
}

double number_field(const json& j, const char* key, double fallback,
                    bool required = false) {
  const auto it = j.find(key);
  if (it == j.end()) {
    if (required) {
      throw UsageError(std::string("config: missing field '") + key + "'");
    }
    return fallback;
  }
  if (!it->is_number()) {
    throw UsageError(std::string("config: field '") + key +
                     "' must be a number");
  }
  return it->get<double>();
}

CovFamily parse_family(const std::string& name) {
  if (name == "ar1") {
    return CovFamily::ar1;
  }
  if (name == "block_sparse") {
    return CovFamily::block_sparse;
  }
  throw UsageError("config: unknown covariance family '" + name +
                   "' (expected 'ar1' or 'block_sparse')");
}

Framework parse_framework(const std::string& name) {
  if (name == "gaussian") {
    return Framework::gaussian;
  }
  if (name == "gamma") {
    return Framework::gamma;
  }
  throw UsageError("config: unknown framework '" + name +
                   "' (expected 'gaussian' or 'gamma')");
}

}  // namespace

SimulateConfig parse_simulate_config(const json& j) {
  if (!j.is_object()) {
    throw UsageError("config: top level must be a JSON object");
  }
  const int schema =
      static_cast<int>(number_field(j, "schema_version", kConfigSchemaVersion));
  if (schema != kConfigSchemaVersion) {
    throw UsageError("config: unsupported schema_version");
  }

  SimulateConfig cfg;
  cfg.alpha = number_field(j, "alpha", 0.05);
  cfg.replications = static_cast<int>(number_field(j, "replications", 500));
  cfg.master_seed =
      static_cast<std::uint64_t>(number_field(j, "master_seed", 0, true));
  if (const auto it = j.find("weights"); it != j.end()) {
    if (!it->is_object()) {
      throw UsageError("config: field 'weights' must be an object");
    }
    cfg.weights.w_max = number_field(*it, "max", 0.5);
    cfg.weights.w_quad = number_field(*it, "quad", 0.5);
  }
  validate_weights(cfg.weights);
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw UsageError("config: field 'alpha' must lie in (0, 1)");
  }
  if (cfg.replications < 1) {
    throw UsageError("config: field 'replications' must be at least 1");
  }

  const json& scenarios = require_field(j, "scenarios");
  if (!scenarios.is_array() || scenarios.empty()) {
    throw UsageError("config: field 'scenarios' must be a nonempty array");
  }

  for (const json& block : scenarios) {
    if (!block.is_object()) {
      throw UsageError("config: each scenario must be an object");
    }
    ScenarioConfig base;
    base.framework = parse_framework(
        require_field(block, "framework").get<std::string>());
    const json& cov = require_field(block, "covariance");
    base.cov.family =
        parse_family(require_field(cov, "family").get<std::string>());
    if (base.cov.family == CovFamily::ar1) {
      base.cov.rho = number_field(cov, "rho", 0.5);
      if (!(std::abs(base.cov.rho) < 1.0)) {
        throw UsageError("config: field 'rho' must satisfy |rho| < 1");
      }
    }
    base.n1 = static_cast<Eigen::Index>(number_field(block, "n1", 0, true));
    base.n2 = static_cast<Eigen::Index>(number_field(block, "n2", 0, true));
    base.p = static_cast<Eigen::Index>(number_field(block, "p", 0, true));
    base.signal.target_ratio = number_field(block, "target_ratio", 0.1);
    base.alpha = cfg.alpha;
    base.replications = cfg.replications;
    base.master_seed = cfg.master_seed;
    base.weights = cfg.weights;

    const json& sparsity = require_field(block, "sparsity");
    if (!sparsity.is_array() || sparsity.empty()) {
      throw UsageError("config: field 'sparsity' must be a nonempty array");
    }
    for (const json& fraction : sparsity) {
      if (!fraction.is_number()) {
        throw UsageError("config: sparsity entries must be numbers");
      }
      ScenarioConfig cell = base;
      cell.signal.sparsity_fraction = fraction.get<double>();
      if (cell.signal.sparsity_fraction < 0.0 ||
          cell.signal.sparsity_fraction > 1.0) {
        throw UsageError("config: sparsity entries must lie in [0, 1]");
      }
      cfg.scenarios.push_back(std::move(cell));
    }
  }
  return cfg;
}

SimulateConfig load_simulate_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw UsageError("cannot open config file " + path);
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw UsageError("config: invalid JSON in " + path + ": " + e.what());
  }
  return parse_simulate_config(j);
}

}  // namespace comptest
