#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cpds/bench.hpp"
#include "cpds/fps.hpp"
#include "cpds/oracle.hpp"
#include "cpds/report.hpp"
#include "cpds/separation.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitBackend = 3;
constexpr int kExitVerification = 4;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cpds::ParseError(cpds::ParseError::Kind::bad_line, 0, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

cpds::Instance load(const std::string& path, int k, const std::string& zi_file, bool edge_list) {
  cpds::Instance inst =
      edge_list ? cpds::parse_edge_list(slurp(path), k) : cpds::parse_instance(slurp(path), k);
  if (!zi_file.empty()) inst = cpds::apply_zero_injection_list(inst, slurp(zi_file));
  inst.set_name(path);
  return inst;
}

void print_report(const cpds::SolveReport& report, const cpds::Instance& inst) {
  std::cout << "instance   " << report.instance_name << " (n=" << report.n << ", m=" << report.m
            << ", k=" << report.k << ", components=" << report.components << ")\n"
            << "model      " << report.model << "\n"
            << "status     " << report.status << "\n"
            << "objective  " << report.objective << "\n"
            << "bound      " << report.bound << "\n"
            << "gap        " << report.gap << "\n"
            << "time       " << report.wall_s << " s (separation " << report.sep_s << " s)\n"
            << "rows       " << report.init_rows << " initial, " << report.lazy_rows << " lazy\n"
            << "vars       " << report.vars << "\n"
            << "nodes      " << report.nodes << "\n"
            << "verified   " << (report.verified ? "yes" : "no") << "\n";
  if (report.has_solution) {
    std::cout << "placement ";
    for (std::size_t i = 0; i < report.rho.placed.size(); ++i) {
      int u = report.rho.placed[i];
      std::cout << " " << inst.label(u) << "->{";
      for (std::size_t j = 0; j < report.rho.assignment[i].size(); ++j)
        std::cout << (j ? "," : "") << inst.label(report.rho.assignment[i][j]);
      std::cout << "}";
    }
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver toolkit for the capacitated power dominating set problem"};
  app.require_subcommand(1);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "solve one instance with one formulation");
  std::string solve_file, solve_model = "EFPS-IP", lp_out, dot_out, zi_file;
  int solve_k = 0;
  bool inp = false, outp = false, init2 = false, trace = false, iterative = false;
  bool edge_list = false, no_warm = false;
  double time_limit = 900.0;
  std::uint64_t seed = 1;
  solve_cmd->add_option("file", solve_file, "instance file")->required();
  solve_cmd->add_option("--k", solve_k, "capacity")->required();
  solve_cmd->add_option("--model", solve_model, "FPS-IP | EFPS-IP | BRI-IP | JOV-IP | FORT-IP");
  solve_cmd->add_flag("--inp", inp, "add incoming propagation rows");
  solve_cmd->add_flag("--outp", outp, "add outgoing propagation rows");
  solve_cmd->add_flag("--init2", init2, "materialize the 2-cycle family up front");
  solve_cmd->add_option("--time-limit", time_limit, "seconds");
  solve_cmd->add_option("--seed", seed, "rng seed");
  solve_cmd->add_option("--lp-out", lp_out, "write the model in LP format");
  solve_cmd->add_option("--dot-out", dot_out, "write the full precedence digraph as DOT");
  solve_cmd->add_flag("--trace", trace, "print the rule trace of the solution");
  bool sep_log = false;
  solve_cmd->add_flag("--sep-log", sep_log, "log one line per separation callback");
  solve_cmd->add_flag("--iterative", iterative, "cutting-plane loop instead of callbacks");
  solve_cmd->add_option("--zi-file", zi_file, "zero-injection labels (secondary importer)");
  solve_cmd->add_flag("--edge-list", edge_list, "input is a plain edge list");
  solve_cmd->add_flag("--no-warm-start", no_warm, "skip the greedy warm start");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force optimum (small instances)");
  std::string oracle_file;
  int oracle_k = 0, oracle_bound = 12;
  bool oracle_edge_list = false;
  std::string oracle_zi;
  oracle_cmd->add_option("file", oracle_file, "instance file")->required();
  oracle_cmd->add_option("--k", oracle_k, "capacity")->required();
  oracle_cmd->add_option("--bound", oracle_bound, "size bound");
  oracle_cmd->add_option("--zi-file", oracle_zi, "zero-injection labels");
  oracle_cmd->add_flag("--edge-list", oracle_edge_list, "input is a plain edge list");

  // kstar
  auto* kstar_cmd = app.add_subcommand("kstar", "smallest k matching the uncapacitated optimum");
  std::string kstar_file, kstar_model = "EFPS-IP-OutP-Init";
  double kstar_limit = 900.0;
  bool kstar_edge_list = false;
  std::string kstar_zi;
  kstar_cmd->add_option("file", kstar_file, "instance file")->required();
  kstar_cmd->add_option("--model", kstar_model, "formulation for the sweep");
  kstar_cmd->add_option("--time-limit", kstar_limit, "seconds per solve");
  kstar_cmd->add_option("--zi-file", kstar_zi, "zero-injection labels");
  kstar_cmd->add_flag("--edge-list", kstar_edge_list, "input is a plain edge list");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "run the benchmark described by a config file");
  std::string bench_config;
  bench_cmd->add_option("config", bench_config, "config file")->required();

  // cross-check
  auto* check_cmd = app.add_subcommand("cross-check", "oracle agreement for small instances");
  std::string check_config;
  check_cmd->add_option("config", check_config, "config file")->required();

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "generate synthetic instances");
  std::string gen_kind = "grid", gen_zi = "all", gen_out;
  int gen_rows = 4, gen_cols = 50, gen_n = 50, gen_extra = 10;
  double gen_diag = 0.0;
  std::uint64_t gen_seed = 1;
  gen_cmd->add_option("kind", gen_kind, "grid | random");
  gen_cmd->add_option("--rows", gen_rows, "grid rows");
  gen_cmd->add_option("--cols", gen_cols, "grid cols");
  gen_cmd->add_option("--diag", gen_diag, "diagonal probability");
  gen_cmd->add_option("--n", gen_n, "random graph vertices");
  gen_cmd->add_option("--extra", gen_extra, "random graph extra edges");
  gen_cmd->add_option("--zi", gen_zi, "all | none | half");
  gen_cmd->add_option("--seed", gen_seed, "rng seed");
  gen_cmd->add_option("--out", gen_out, "output path (stdout when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  auto backend = cpds::milp::make_bnb_backend();
  try {
    if (*solve_cmd) {
      cpds::Instance inst = load(solve_file, solve_k, zi_file, edge_list);
      auto [kind, options] = cpds::parse_formulation(solve_model);
      options.inp |= inp;
      options.outp |= outp;
      options.init2 |= init2;
      if (!lp_out.empty()) {
        cpds::FormulationModel model = cpds::build_model(inst, kind, options);
        std::ofstream out(lp_out);
        out << cpds::milp::to_lp_format(model.spec);
      }
      cpds::milp::SolveLimits limits;
      limits.time_limit_s = time_limit;
      limits.seed = seed;
      cpds::SolveReport report = cpds::solve_cpds(inst, kind, options, limits, *backend,
                                                  iterative, !no_warm,
                                                  sep_log ? &std::cerr : nullptr);
      print_report(report, inst);
      if (trace && report.has_solution)
        std::cout << cpds::trace_to_text(inst, cpds::monitored_set(inst, report.rho));
      if (!dot_out.empty()) {
        // digraph of the applied propagations when a solution exists, else D
        std::ofstream out(dot_out);
        if (report.has_solution) {
          cpds::CalcTrace t = cpds::monitored_set(inst, report.rho);
          out << cpds::to_dot(inst, cpds::precedence_digraph(inst, t.applied_props));
        } else {
          out << cpds::to_dot(inst, cpds::full_precedence_digraph(inst));
        }
      }
      return 0;
    }
    if (*oracle_cmd) {
      cpds::Instance inst = load(oracle_file, oracle_k, oracle_zi, oracle_edge_list);
      cpds::OracleResult result = cpds::brute_force_cpds(inst, oracle_bound);
      std::cout << "optimum " << result.optimum << " (nodes " << result.nodes_enumerated << ")\n";
      for (std::size_t i = 0; i < result.witness.placed.size(); ++i) {
        std::cout << inst.label(result.witness.placed[i]) << " ->";
        for (int v : result.witness.assignment[i]) std::cout << " " << inst.label(v);
        std::cout << "\n";
      }
      return 0;
    }
    if (*kstar_cmd) {
      cpds::Instance inst = load(kstar_file, 0, kstar_zi, kstar_edge_list);
      auto [kind, options] = cpds::parse_formulation(kstar_model);
      cpds::milp::SolveLimits limits;
      limits.time_limit_s = kstar_limit;
      int value = cpds::k_star(inst, [&](const cpds::Instance& capped) {
        return cpds::milp_optimum(capped, kind, options, limits, *backend);
      });
      std::cout << "k* = " << value << "\n";
      return 0;
    }
    if (*bench_cmd) {
      cpds::RunConfig config = cpds::parse_run_config(slurp(bench_config));
      cpds::BenchResult result = cpds::run_benchmark(config, *backend, &std::cerr);
      std::ofstream out(config.output_csv);
      cpds::write_csv(result, out);
      std::cout << "wrote " << result.reports.size() << " rows to " << config.output_csv << "\n";
      std::cout << "cut dedup: global, by canonical row form\n";
      for (const auto& row : result.summary)
        std::cout << row.model << ": optimality " << row.optimality_pct << "%, mean time "
                  << row.mean_time_s << " s, mean sep " << row.mean_sep_time_s << " s, mean gap "
                  << row.mean_gap_pct << "%\n";
      return result.errors.empty() ? 0 : kExitBackend;
    }
    if (*check_cmd) {
      cpds::RunConfig config = cpds::parse_run_config(slurp(check_config));
      auto failures = cpds::cross_check(config, *backend, &std::cerr);
      if (failures.empty()) {
        std::cout << "cross-check: all models agree with the oracle\n";
        return 0;
      }
      for (const auto& f : failures)
        std::cout << "mismatch: " << f.instance_name << " k=" << f.k << " " << f.model
                  << " expected " << f.expected << " got " << f.got << "\n";
      return kExitVerification;
    }
    if (*gen_cmd) {
      cpds::Instance inst =
          gen_kind == "grid"
              ? cpds::generate_grid(gen_rows, gen_cols, gen_diag, gen_zi, gen_seed)
              : cpds::generate_random_connected(gen_n, gen_extra, gen_zi, gen_seed);
      std::string text = cpds::write_instance(inst);
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(gen_out);
        out << text;
      }
      return 0;
    }
  } catch (const cpds::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const cpds::VerificationError& e) {
    std::cerr << "verification error: " << e.what() << "\n";
    return kExitVerification;
  } catch (const cpds::milp::BackendError& e) {
    std::cerr << "backend error: " << e.what() << "\n";
    return kExitBackend;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBackend;
  }
  return kExitUsage;
}
