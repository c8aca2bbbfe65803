#include "comptest/report.hpp"

#include <fstream>

#include "comptest/error.hpp"

namespace comptest {

nlohmann::json test_result_to_json(const TestResult& r) {
  return nlohmann::json{{"method", std::string(method_name(r.method))},
                        {"statistic", r.statistic},
                        {"p_value", r.p_value},
                        {"reject", r.reject}};
}

nlohmann::json PreprocessingLog::to_json() const {
  return nlohmann::json{{"pseudo_count", pseudo_count},
                        {"min_count", min_count},
                        {"min_count_applied", min_count_applied},
                        {"transpose", transpose},
                        {"dropped_min_count", dropped_min_count},
                        {"dropped_degenerate", dropped_degenerate}};
}

nlohmann::json make_run_report(const std::string& command,
                               nlohmann::json params,
                               std::vector<TestResult> results,
                               const PreprocessingLog& preprocessing,
                               std::uint64_t seed) {
  nlohmann::json results_json = nlohmann::json::array();
  for (const TestResult& r : results) {
    results_json.push_back(test_result_to_json(r));
  }
  return nlohmann::json{{"version", kVersion},
                        {"schema_version", kReportSchemaVersion},
                        {"command", command},
                        {"params", std::move(params)},
                        {"results", std::move(results_json)},
                        {"preprocessing", preprocessing.to_json()},
                        {"seed", seed}};
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write " + path);
  }
  out << j.dump(2) << '\n';
}

}  // namespace comptest
