// report.hpp
// Run reports: every CLI invocation emits a JSON document holding the
// parameters needed to reproduce it plus the results.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "comptest/combine.hpp"

namespace comptest {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

nlohmann::json test_result_to_json(const TestResult& r);

struct PreprocessingLog {
  double pseudo_count = 0.5;
  double min_count = 0;
  bool min_count_applied = false;
  bool transpose = false;
  std::vector<std::string> dropped_min_count;
  std::vector<std::string> dropped_degenerate;

  nlohmann::json to_json() const;
};

// Skeleton report: {version, command, params, results, preprocessing, seed}.
nlohmann::json make_run_report(const std::string& command,
                               nlohmann::json params,
                               std::vector<TestResult> results,
                               const PreprocessingLog& preprocessing,
                               std::uint64_t seed);

void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace comptest
