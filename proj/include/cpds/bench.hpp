#ifndef CPDS_BENCH_HPP
#define CPDS_BENCH_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "cpds/formulations.hpp"
#include "cpds/instance.hpp"
#include "cpds/milp.hpp"
#include "cpds/report.hpp"

namespace cpds {

struct ModelChoice {
  FormulationKind kind;
  FormulationOptions options;
};

struct RunConfig {
  std::vector<std::string> instance_paths;
  std::vector<ModelChoice> models;
  enum class KMode { fixed_list, auto_to_kstar } k_mode = KMode::auto_to_kstar;
  std::vector<int> k_values;       // for fixed_list
  double time_limit_s = 900.0;     // paper default; desk presets override
  int runs = 1;
  std::uint64_t seed_base = 1;
  std::string output_csv = "results.csv";
  int workers = 1;
  int oracle_bound = 12;
  bool iterative = false;
};

/// Parses the key = value configuration text (# comments, repeatable
/// `instance` keys, `k = auto` or an explicit list, `models` by name).
RunConfig parse_run_config(const std::string& text);

inline const char* kCsvHeader =
    "instance,n,m,k,model,options,run,seed,status,objective,bound,gap,"
    "time_s,sep_time_s,lazy_rows,init_rows,vars,verified";

std::string csv_row(const SolveReport& report, int run);

/// k* for the instance, solved with EFPS-IP-OutP-Init; when `cache_path` is
/// non-empty the value is read from / written to that file.
int k_star_for_benchmark(const Instance& inst, const milp::SolveLimits& limits,
                         milp::Backend& backend, const std::string& cache_path = "");

struct BenchSummaryRow {
  std::string model;
  int cells = 0;
  double optimality_pct = 0.0;
  double mean_time_s = 0.0;
  double mean_sep_time_s = 0.0;
  double mean_gap_pct = 0.0;
};

struct BenchResult {
  std::vector<SolveReport> reports;  // one per (instance, k, model, run)
  std::vector<int> runs;             // run index per report
  std::vector<BenchSummaryRow> summary;
  std::vector<std::string> errors;
};

BenchResult run_benchmark(const RunConfig& config, milp::Backend& backend,
                          std::ostream* log = nullptr);

void write_csv(const BenchResult& result, std::ostream& out);

struct CrossCheckFailure {
  std::string instance_name;
  int k = 0;
  std::string model;
  int expected = 0;
  double got = 0.0;
};

/// How cross-check obtains a model's answer; replaceable so tests can inject
/// a deliberately corrupted solver and watch the mismatch get caught.
using CrossCheckSolveFn =
    std::function<SolveReport(const Instance&, const ModelChoice&, const milp::SolveLimits&)>;

/// Oracle-vs-model agreement on one instance for the given capacities.
std::vector<CrossCheckFailure> cross_check_instance(const Instance& inst,
                                                    const std::vector<ModelChoice>& models,
                                                    const std::vector<int>& k_values,
                                                    const milp::SolveLimits& limits,
                                                    milp::Backend& backend, int oracle_bound,
                                                    const CrossCheckSolveFn& solve_fn = {});

/// Config-driven oracle agreement run; returns the failures (empty = pass).
std::vector<CrossCheckFailure> cross_check(const RunConfig& config, milp::Backend& backend,
                                           std::ostream* log = nullptr);

}  // namespace cpds

#endif
