// comptest_main.cpp
// Command-line front end: `test` runs the four tests on two groups of count
// data, `simulate` runs Monte Carlo grids, `permute` runs permutation size
// studies, and `filter` drops low-count columns.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "comptest/combine.hpp"
#include "comptest/config.hpp"
#include "comptest/csv.hpp"
#include "comptest/error.hpp"
#include "comptest/harness.hpp"
#include "comptest/parallel.hpp"
#include "comptest/report.hpp"

namespace {

using namespace comptest;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

struct CommonOptions {
  std::string group1_path;
  std::string group2_path;
  std::string data_path;
  std::string label_column;
  double alpha = 0.05;
  double pseudo_count = 0.5;
  double min_count = 0;
  bool min_count_set = false;
  bool transpose = false;
  bool drop_degenerate = false;
  std::string weights = "0.5:0.5";
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out_path;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--group1", opt.group1_path, "CSV of counts for group 1");
  cmd->add_option("--group2", opt.group2_path, "CSV of counts for group 2");
  cmd->add_option("--data", opt.data_path,
                  "single CSV holding both groups (needs --label-column)");
  cmd->add_option("--label-column", opt.label_column,
                  "column whose two distinct values define the groups");
  cmd->add_option("--alpha", opt.alpha, "significance level")
      ->default_val(0.05);
  cmd->add_option("--pseudo-count", opt.pseudo_count,
                  "replacement for zero counts")
      ->default_val(0.5);
  cmd->add_option("--min-count", opt.min_count,
                  "drop columns with pooled total below this");
  cmd->add_flag("--transpose", opt.transpose,
                "input files have taxa as rows and samples as columns");
  cmd->add_flag("--drop-degenerate", opt.drop_degenerate,
                "drop zero-variance columns with a warning instead of failing");
  cmd->add_option("--weights", opt.weights,
                  "combination weights as wM:wQ")
      ->default_val("0.5:0.5");
  cmd->add_option("--seed", opt.seed, "random seed (permutations)");
  cmd->add_option("--threads", opt.threads,
                  "worker threads; 0 = all cores (env COMPTEST_THREADS)");
  cmd->add_option("--out", opt.out_path, "write the JSON report here");
}

CombinationWeights parse_weights(const std::string& spec) {
  const auto sep = spec.find(':');
  if (sep == std::string::npos) {
    throw UsageError("--weights must look like wM:wQ, e.g. 0.5:0.5");
  }
  CombinationWeights w;
  try {
    w.w_max = std::stod(spec.substr(0, sep));
    w.w_quad = std::stod(spec.substr(sep + 1));
  } catch (const std::exception&) {
    throw UsageError("--weights must hold two numbers, e.g. 0.5:0.5");
  }
  validate_weights(w);
  return w;
}

int effective_threads(int flag_value) {
  if (flag_value > 0) {
    return flag_value;
  }
  if (const char* env = std::getenv("COMPTEST_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) {
      return parsed;
    }
  }
  return resolve_threads(0);
}

struct LoadedGroups {
  CountMatrix group1;
  CountMatrix group2;
};

LoadedGroups load_groups(const CommonOptions& opt) {
  const CountsLayout plain{opt.transpose, ""};
  if (!opt.data_path.empty()) {
    if (opt.label_column.empty()) {
      throw UsageError("--data requires --label-column");
    }
    if (!opt.group1_path.empty() || !opt.group2_path.empty()) {
      throw UsageError("--data cannot be combined with --group1/--group2");
    }
    const CountsLayout layout{opt.transpose, opt.label_column};
    const ParsedCounts parsed = read_counts_csv(opt.data_path, layout);
    const LabelSplit split = split_by_label(parsed.counts, parsed.labels);
    return LoadedGroups{split.group1, split.group2};
  }
  if (opt.group1_path.empty() || opt.group2_path.empty()) {
    throw UsageError(
        "provide --group1 and --group2, or --data with --label-column");
  }
  LoadedGroups groups;
  groups.group1 = read_counts_csv(opt.group1_path, plain).counts;
  groups.group2 = read_counts_csv(opt.group2_path, plain).counts;

  if (groups.group1.values.cols() != groups.group2.values.cols()) {
    throw DataError("column mismatch: the two groups have different widths");
  }
  if (!groups.group1.col_ids.empty() && !groups.group2.col_ids.empty() &&
      groups.group1.col_ids != groups.group2.col_ids) {
    throw DataError("column mismatch: the group files have different headers");
  }
  return groups;
}

CountMatrix drop_columns(const CountMatrix& m,
                         const std::vector<Eigen::Index>& cols) {
  if (cols.empty()) {
    return m;
  }
  std::vector<bool> drop(static_cast<std::size_t>(m.values.cols()), false);
  for (const Eigen::Index j : cols) {
    drop[static_cast<std::size_t>(j)] = true;
  }
  CountMatrix out;
  out.row_ids = m.row_ids;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < m.values.cols(); ++j) {
    if (!drop[static_cast<std::size_t>(j)]) {
      keep.push_back(j);
    }
  }
  out.values.resize(m.values.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    out.values.col(static_cast<Eigen::Index>(k)) = m.values.col(keep[k]);
    if (!m.col_ids.empty()) {
      out.col_ids.push_back(m.col_ids[static_cast<std::size_t>(keep[k])]);
    }
  }
  return out;
}

std::string column_label(const CountMatrix& m, Eigen::Index j) {
  if (static_cast<Eigen::Index>(m.col_ids.size()) > j) {
    return m.col_ids[static_cast<std::size_t>(j)];
  }
  return "col" + std::to_string(j);
}

struct PreparedData {
  TwoSampleClr data;
  PreprocessingLog log;
  Eigen::Index n1;
  Eigen::Index n2;
};

// counts -> min-count filter -> pseudo-count imputation -> relative
// abundance -> CLR; optionally drops degenerate columns and retries.
PreparedData prepare_data(const CommonOptions& opt) {
  LoadedGroups groups = load_groups(opt);

  PreprocessingLog log;
  log.pseudo_count = opt.pseudo_count;
  log.transpose = opt.transpose;

  if (opt.min_count_set) {
    log.min_count = opt.min_count;
    log.min_count_applied = true;
    CountMatrix pooled;
    pooled.values.resize(
        groups.group1.values.rows() + groups.group2.values.rows(),
        groups.group1.values.cols());
    pooled.values.topRows(groups.group1.values.rows()) = groups.group1.values;
    pooled.values.bottomRows(groups.group2.values.rows()) =
        groups.group2.values;
    pooled.col_ids = groups.group1.col_ids;
    const FilterResult filtered = filter_min_count(pooled, opt.min_count);
    for (const Eigen::Index j : filtered.dropped_indices) {
      log.dropped_min_count.push_back(column_label(pooled, j));
    }
    groups.group1 = drop_columns(groups.group1, filtered.dropped_indices);
    groups.group2 = drop_columns(groups.group2, filtered.dropped_indices);
  }

  for (;;) {
    const CountMatrix imputed1 =
        impute_pseudo_count(groups.group1, opt.pseudo_count);
    const CountMatrix imputed2 =
        impute_pseudo_count(groups.group2, opt.pseudo_count);
    const ClrMatrix clr1 = clr_transform(to_relative_abundance(imputed1));
    const ClrMatrix clr2 = clr_transform(to_relative_abundance(imputed2));
    TwoSampleClr data = TwoSampleClr::from_clr(clr1, clr2);
    try {
      pooled_variances(data);  // surfaces degenerate columns up front
      return PreparedData{std::move(data), log, clr1.rows(), clr2.rows()};
    } catch (const DegenerateColumnError& e) {
      if (!opt.drop_degenerate) {
        throw;
      }
      const std::string label = column_label(groups.group1, e.column());
      std::cerr << "warning: dropping degenerate column '" << label << "'\n";
      log.dropped_degenerate.push_back(label);
      const std::vector<Eigen::Index> cols{e.column()};
      groups.group1 = drop_columns(groups.group1, cols);
      groups.group2 = drop_columns(groups.group2, cols);
    }
  }
}

void print_results(const std::vector<TestResult>& results) {
  std::printf("%-8s %14s %14s  %s\n", "method", "statistic", "p_value",
              "reject");
  for (const TestResult& r : results) {
    std::printf("%-8s %14.6g %14.6g  %s\n",
                std::string(method_name(r.method)).c_str(), r.statistic,
                r.p_value, r.reject ? "yes" : "no");
  }
}

nlohmann::json common_params(const CommonOptions& opt,
                             const CombinationWeights& w) {
  return nlohmann::json{{"alpha", opt.alpha},
                        {"pseudo_count", opt.pseudo_count},
                        {"weights", {{"max", w.w_max}, {"quad", w.w_quad}}},
                        {"transpose", opt.transpose},
                        {"drop_degenerate", opt.drop_degenerate},
                        {"min_count", opt.min_count_set
                                          ? nlohmann::json(opt.min_count)
                                          : nlohmann::json(nullptr)}};
}

int cmd_test(const CommonOptions& opt, const std::string& which) {
  const CombinationWeights w = parse_weights(opt.weights);
  const PreparedData prepared = prepare_data(opt);

  std::vector<TestResult> results;
  if (which == "max") {
    results.push_back(max_test(prepared.data, opt.alpha));
  } else if (which == "quad") {
    results.push_back(quad_test(prepared.data, opt.alpha));
  } else {
    const TestBattery battery = run_all_tests(prepared.data, opt.alpha, w);
    if (which == "fisher") {
      results.push_back(battery.fisher);
    } else if (which == "cauchy") {
      results.push_back(battery.cauchy);
    } else {
      results = {battery.max, battery.quad, battery.fisher, battery.cauchy};
    }
  }

  nlohmann::json params = common_params(opt, w);
  params["test"] = which;
  params["n1"] = prepared.n1;
  params["n2"] = prepared.n2;
  params["p"] = prepared.data.p();
  const nlohmann::json report = make_run_report(
      "test", std::move(params), results, prepared.log, opt.seed);

  print_results(results);
  if (!opt.out_path.empty()) {
    write_json_file(opt.out_path, report);
  } else {
    std::cout << report.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_permute(const CommonOptions& opt, int permutations,
                const std::string& split_spec) {
  const CombinationWeights w = parse_weights(opt.weights);
  const PreparedData prepared = prepare_data(opt);

  Eigen::Index n1 = prepared.n1;
  Eigen::Index n2 = prepared.n2;
  if (!split_spec.empty()) {
    const auto sep = split_spec.find(':');
    if (sep == std::string::npos) {
      throw UsageError("--split must look like n1:n2");
    }
    try {
      n1 = static_cast<Eigen::Index>(std::stoll(split_spec.substr(0, sep)));
      n2 = static_cast<Eigen::Index>(std::stoll(split_spec.substr(sep + 1)));
    } catch (const std::exception&) {
      throw UsageError("--split must hold two integers, e.g. 75:75");
    }
  }

  const RngStream rng(opt.seed, hash_label("permute"));
  const PermutationStudy study = permutation_size_study(
      prepared.data, n1, n2, permutations, opt.alpha, rng,
      effective_threads(opt.threads));

  std::printf("permutations: %d  split: %lld:%lld  alpha: %g\n",
              study.n_perms, static_cast<long long>(study.n1),
              static_cast<long long>(study.n2), study.alpha);
  std::printf("%-8s %10s\n", "method", "rejection");
  std::printf("%-8s %10.4f\n", "max", study.rates.max);
  std::printf("%-8s %10.4f\n", "quad", study.rates.quad);
  std::printf("%-8s %10.4f\n", "fisher", study.rates.fisher);
  std::printf("%-8s %10.4f\n", "cauchy", study.rates.cauchy);
  if (study.errors > 0) {
    std::fprintf(stderr, "error: %d permutation(s) failed\n", study.errors);
  }

  nlohmann::json params = common_params(opt, w);
  params["permutations"] = permutations;
  params["split"] = {{"n1", n1}, {"n2", n2}};
  nlohmann::json report =
      make_run_report("permute", std::move(params), {}, prepared.log,
                      opt.seed);
  report["rejection_rates"] = {{"max", study.rates.max},
                               {"quad", study.rates.quad},
                               {"fisher", study.rates.fisher},
                               {"cauchy", study.rates.cauchy}};
  report["permutation_errors"] = study.errors;
  if (!opt.out_path.empty()) {
    write_json_file(opt.out_path, report);
  }
  return study.errors == 0 ? kExitOk : kExitNumeric;
}

int cmd_simulate(const std::string& config_path,
                 const std::string& out_prefix, int threads) {
  const SimulateConfig cfg = load_simulate_config(config_path);
  const RejectionTable table =
      run_grid(cfg.scenarios, effective_threads(threads));

  const std::string csv = table.to_csv();
  std::cout << csv;
  if (!out_prefix.empty()) {
    {
      std::ofstream out(out_prefix + ".csv");
      if (!out) {
        throw DataError("cannot write " + out_prefix + ".csv");
      }
      out << csv;
    }
    write_json_file(out_prefix + ".json", table.to_json());
  }
  if (table.total_errors() > 0) {
    std::fprintf(stderr, "error: %d replication(s) failed\n",
                 table.total_errors());
    return kExitNumeric;
  }
  return kExitOk;
}

int cmd_filter(const std::string& input, const std::string& output,
               double min_count, bool transpose) {
  const CountsLayout layout{transpose, ""};
  const ParsedCounts parsed = read_counts_csv(input, layout);
  const FilterResult result = filter_min_count(parsed.counts, min_count);
  for (const Eigen::Index j : result.dropped_indices) {
    std::cerr << "dropped: " << column_label(parsed.counts, j) << '\n';
  }
  std::cerr << "kept " << result.kept.values.cols() << " of "
            << parsed.counts.values.cols() << " columns\n";
  if (output.empty()) {
    write_counts_csv(std::cout, result.kept);
  } else {
    write_counts_csv_file(output, result.kept);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Power-enhanced two-sample mean tests for compositional data"};
  app.require_subcommand(1);

  CommonOptions test_opt;
  std::string which_test = "all";
  CLI::App* test_cmd =
      app.add_subcommand("test", "run the four tests on two groups");
  add_common_flags(test_cmd, test_opt);
  test_cmd->add_option("--test", which_test,
                       "which test to report: max, quad, fisher, cauchy, all")
      ->check(CLI::IsMember({"max", "quad", "fisher", "cauchy", "all"}))
      ->default_val("all");

  CommonOptions permute_opt;
  int permutations = 0;
  std::string split_spec;
  CLI::App* permute_cmd =
      app.add_subcommand("permute", "permutation size study on pooled data");
  add_common_flags(permute_cmd, permute_opt);
  permute_cmd
      ->add_option("--permutations", permutations, "number of permutations")
      ->required();
  permute_cmd->add_option("--split", split_spec,
                          "group sizes as n1:n2 (default: original sizes)");

  std::string config_path;
  std::string out_prefix;
  int sim_threads = 0;
  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "Monte Carlo grid from a JSON config");
  simulate_cmd->add_option("--config", config_path, "JSON scenario config")
      ->required();
  simulate_cmd->add_option("--out-prefix", out_prefix,
                           "write <prefix>.csv and <prefix>.json");
  simulate_cmd->add_option("--threads", sim_threads,
                           "worker threads; 0 = all cores");

  std::string filter_input;
  std::string filter_output;
  double filter_min = 10;
  bool filter_transpose = false;
  CLI::App* filter_cmd =
      app.add_subcommand("filter", "drop columns with low pooled counts");
  filter_cmd->add_option("--input", filter_input, "CSV of counts")->required();
  filter_cmd->add_option("--output", filter_output,
                         "filtered CSV (stdout when omitted)");
  filter_cmd->add_option("--min-count", filter_min,
                         "keep columns with at least this total")
      ->default_val(10);
  filter_cmd->add_flag("--transpose", filter_transpose,
                       "input has taxa as rows");

  try {
    app.parse(argc, argv);
    test_opt.min_count_set = test_cmd->count("--min-count") > 0;
    permute_opt.min_count_set = permute_cmd->count("--min-count") > 0;

    if (test_cmd->parsed()) {
      return cmd_test(test_opt, which_test);
    }
    if (permute_cmd->parsed()) {
      return cmd_permute(permute_opt, permutations, split_spec);
    }
    if (simulate_cmd->parsed()) {
      return cmd_simulate(config_path, out_prefix, sim_threads);
    }
    if (filter_cmd->parsed()) {
      return cmd_filter(filter_input, filter_output, filter_min,
                        filter_transpose);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}
