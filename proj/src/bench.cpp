#include "cpds/bench.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "cpds/oracle.hpp"

namespace cpds {

namespace {

std::vector<std::string> tokens(const std::string& value) {
  std::istringstream in(value);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

Instance load_instance(const std::string& path, int capacity) {
  std::ifstream in(path);
  if (!in) throw ParseError(ParseError::Kind::bad_line, 0, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  Instance inst = parse_instance(buffer.str(), capacity);
  inst.set_name(path);
  return inst;
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
  RunConfig config;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (!tokens(line).empty())
        throw ParseError(ParseError::Kind::bad_line, lineno, line);
      continue;
    }
    std::string key = tokens(line.substr(0, eq)).empty() ? "" : tokens(line.substr(0, eq))[0];
    std::string value = line.substr(eq + 1);
    auto vals = tokens(value);
    if (key == "instance" || key == "instances") {
      for (auto& v : vals) config.instance_paths.push_back(v);
    } else if (key == "model" || key == "models") {
      for (auto& v : vals) {
        auto [kind, options] = parse_formulation(v);
        config.models.push_back({kind, options});
      }
    } else if (key == "k") {
      if (vals.size() == 1 && vals[0] == "auto") {
        config.k_mode = RunConfig::KMode::auto_to_kstar;
      } else {
        config.k_mode = RunConfig::KMode::fixed_list;
        config.k_values.clear();
        for (auto& v : vals) {
          auto dots = v.find("..");
          if (dots != std::string::npos) {
            int lo = std::stoi(v.substr(0, dots));
            int hi = std::stoi(v.substr(dots + 2));
            for (int k = lo; k <= hi; ++k) config.k_values.push_back(k);
          } else {
            config.k_values.push_back(std::stoi(v));
          }
        }
        for (int k : config.k_values)
          if (k < 0)
            throw ParseError(ParseError::Kind::negative_capacity, lineno, std::to_string(k));
      }
    } else if (key == "time_limit") {
      config.time_limit_s = std::stod(vals.at(0));
    } else if (key == "runs") {
      config.runs = std::stoi(vals.at(0));
    } else if (key == "seed") {
      config.seed_base = std::stoull(vals.at(0));
    } else if (key == "output") {
      config.output_csv = vals.at(0);
    } else if (key == "workers") {
      config.workers = std::stoi(vals.at(0));
    } else if (key == "oracle_bound") {
      config.oracle_bound = std::stoi(vals.at(0));
    } else if (key == "iterative") {
      config.iterative = vals.at(0) == "true" || vals.at(0) == "1";
    } else if (!key.empty()) {
      throw ParseError(ParseError::Kind::bad_line, lineno, "unknown key " + key);
    }
  }
  if (config.runs < 1) config.runs = 1;
  if (config.time_limit_s <= 0) config.time_limit_s = 900.0;
  return config;
}

std::string csv_row(const SolveReport& report, int run) {
  std::ostringstream out;
  std::string options;
  auto [kind, opts] = parse_formulation(report.model);
  std::string base = formulation_name(kind, {});
  if (report.model.size() > base.size()) options = report.model.substr(base.size() + 1);
  out << report.instance_name << "," << report.n << "," << report.m << "," << report.k << ","
      << base << "," << (options.empty() ? "-" : options) << "," << run << "," << report.seed
      << "," << report.status << "," << static_cast<long long>(std::llround(report.objective))
      << "," << report.bound << "," << report.gap << "," << report.wall_s << "," << report.sep_s
      << "," << report.lazy_rows << "," << report.init_rows << "," << report.vars << ","
      << (report.verified ? 1 : 0);
  return out.str();
}

int k_star_for_benchmark(const Instance& inst, const milp::SolveLimits& limits,
                         milp::Backend& backend, const std::string& cache_path) {
  if (!cache_path.empty()) {
    std::ifstream cache(cache_path);
    int cached;
    if (cache && (cache >> cached) && cached >= 0) return cached;
  }
  int value = k_star(inst, [&](const Instance& capped) {
    return milp_optimum(capped, FormulationKind::efps_ip, {false, true, true}, limits, backend);
  });
  if (!cache_path.empty()) {
    std::ofstream cache(cache_path);
    cache << value << "\n";
  }
  return value;
}

namespace {

struct Cell {
  int instance_index;
  int k;
  ModelChoice model;
  int run;
};

}  // namespace

BenchResult run_benchmark(const RunConfig& config, milp::Backend& backend, std::ostream* log) {
  BenchResult result;
  std::vector<Instance> instances;
  std::vector<std::string> names;
  for (const auto& path : config.instance_paths) {
    try {
      instances.push_back(load_instance(path, 0));
      names.push_back(path);
    } catch (const std::exception& e) {
      result.errors.push_back(std::string("load ") + path + ": " + e.what());
      if (log) *log << "error: " << result.errors.back() << "\n";
    }
  }

  std::vector<Cell> cells;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    std::vector<int> ks;
    if (config.k_mode == RunConfig::KMode::auto_to_kstar) {
      milp::SolveLimits limits;
      limits.time_limit_s = config.time_limit_s;
      limits.seed = config.seed_base;
      try {
        int kstar = k_star_for_benchmark(instances[i], limits, backend, names[i] + ".kstar");
        for (int k = 0; k <= kstar; ++k) ks.push_back(k);
        if (log) *log << names[i] << ": k* = " << kstar << "\n";
      } catch (const std::exception& e) {
        result.errors.push_back(names[i] + std::string(": k* failed: ") + e.what());
        if (log) *log << "error: " << result.errors.back() << "\n";
        continue;
      }
    } else {
      ks = config.k_values;
    }
    for (int k : ks)
      for (const auto& model : config.models)
        for (int run = 0; run < config.runs; ++run)
          cells.push_back({static_cast<int>(i), k, model, run});
  }

  result.reports.resize(cells.size());
  result.runs.resize(cells.size());
  std::vector<char> cell_ok(cells.size(), 0);
  std::vector<std::string> cell_errors(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;

  auto worker = [&] {
    while (true) {
      std::size_t at = next.fetch_add(1);
      if (at >= cells.size()) return;
      const Cell& cell = cells[at];
      milp::SolveLimits limits;
      limits.time_limit_s = config.time_limit_s;
      limits.seed = config.seed_base + cell.run;
      try {
        Instance capped = instances[cell.instance_index].with_capacity(cell.k);
        SolveReport report = solve_cpds(capped, cell.model.kind, cell.model.options, limits,
                                        backend, config.iterative);
        result.reports[at] = report;
        result.runs[at] = cell.run;
        cell_ok[at] = 1;
        if (log) {
          std::lock_guard<std::mutex> lock(log_mutex);
          *log << csv_row(report, cell.run) << "\n";
        }
      } catch (const std::exception& e) {
        cell_errors[at] = names[cell.instance_index] + " k=" + std::to_string(cell.k) + " " +
                          formulation_name(cell.model.kind, cell.model.options) + ": " + e.what();
      }
    }
  };

  int workers = std::max(1, config.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // drop failed cells, keep their error strings
  BenchResult final;
  final.errors = result.errors;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cell_ok[i]) {
      final.reports.push_back(std::move(result.reports[i]));
      final.runs.push_back(result.runs[i]);
    } else if (!cell_errors[i].empty()) {
      final.errors.push_back(cell_errors[i]);
      if (log) *log << "error: " << cell_errors[i] << "\n";
    }
  }

  std::map<std::string, BenchSummaryRow> by_model;
  for (const auto& report : final.reports) {
    auto& row = by_model[report.model];
    row.model = report.model;
    ++row.cells;
    row.mean_time_s += report.wall_s;
    row.mean_sep_time_s += report.sep_s;
    if (report.status == "optimal") row.optimality_pct += 1.0;
    else row.mean_gap_pct += report.gap * 100.0;
  }
  for (auto& [name, row] : by_model) {
    int timed_out = row.cells - static_cast<int>(row.optimality_pct);
    row.mean_gap_pct = timed_out > 0 ? row.mean_gap_pct / timed_out : 0.0;
    row.optimality_pct = 100.0 * row.optimality_pct / row.cells;
    row.mean_time_s /= row.cells;
    row.mean_sep_time_s /= row.cells;
    final.summary.push_back(row);
  }
  return final;
}

void write_csv(const BenchResult& result, std::ostream& out) {
  out << kCsvHeader << "\n";
  for (std::size_t i = 0; i < result.reports.size(); ++i)
    out << csv_row(result.reports[i], result.runs[i]) << "\n";
}

std::vector<CrossCheckFailure> cross_check_instance(const Instance& inst,
                                                    const std::vector<ModelChoice>& models,
                                                    const std::vector<int>& k_values,
                                                    const milp::SolveLimits& limits,
                                                    milp::Backend& backend, int oracle_bound,
                                                    const CrossCheckSolveFn& solve_fn) {
  std::vector<CrossCheckFailure> failures;
  for (int k : k_values) {
    Instance capped = inst.with_capacity(k);
    OracleResult truth = brute_force_cpds(capped, oracle_bound);
    for (const auto& model : models) {
      SolveReport report = solve_fn
                               ? solve_fn(capped, model, limits)
                               : solve_cpds(capped, model.kind, model.options, limits, backend);
      if (report.status != "optimal" ||
          std::llround(report.objective) != truth.optimum) {
        failures.push_back({inst.name(), k, report.model, truth.optimum, report.objective});
      }
    }
  }
  return failures;
}

std::vector<CrossCheckFailure> cross_check(const RunConfig& config, milp::Backend& backend,
                                           std::ostream* log) {
  std::vector<CrossCheckFailure> failures;
  for (const auto& path : config.instance_paths) {
    Instance inst = load_instance(path, 0);
    if (inst.vertex_count() > config.oracle_bound) {
      if (log) *log << path << ": skipped (above oracle bound)\n";
      continue;
    }
    std::vector<int> ks = config.k_values;
    if (config.k_mode == RunConfig::KMode::auto_to_kstar) {
      ks.clear();
      for (int k = 0; k <= inst.max_degree(); ++k) ks.push_back(k);
    }
    milp::SolveLimits limits;
    limits.time_limit_s = config.time_limit_s;
    limits.seed = config.seed_base;
    auto got = cross_check_instance(inst, config.models, ks, limits, backend, config.oracle_bound);
    for (auto& f : got) failures.push_back(f);
    if (log)
      *log << path << ": " << (got.empty() ? "ok" : std::to_string(got.size()) + " mismatches")
           << "\n";
  }
  return failures;
}

}  // namespace cpds
