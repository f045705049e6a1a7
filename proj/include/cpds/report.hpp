#ifndef CPDS_REPORT_HPP
#define CPDS_REPORT_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "cpds/formulations.hpp"
#include "cpds/instance.hpp"
#include "cpds/milp.hpp"
#include "cpds/propagation.hpp"

namespace cpds {

/// Decoded-solution/objective mismatch: a solver or decoder bug, never a
/// warning.
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolveReport {
  std::string instance_name;
  int n = 0;
  int m = 0;
  int k = 0;
  std::string model;
  std::string status;  // optimal | time-limit | infeasible
  double objective = 0.0;
  double bound = 0.0;
  double gap = 0.0;
  double wall_s = 0.0;
  double sep_s = 0.0;
  long lazy_rows = 0;
  long init_rows = 0;
  long vars = 0;
  long nodes = 0;
  bool verified = false;
  bool has_solution = false;
  int components = 1;
  std::uint64_t seed = 0;
  CapFunction rho;  // decoded solution over the original vertex ids
};

/// Feasible assignment for `model` encoding rho (with PR/timestep blocks
/// filled from a proper trace); nullopt when rho does not power-dominate.
std::optional<std::vector<double>> encode_solution(const Instance& inst,
                                                   const FormulationModel& model,
                                                   const CapFunction& rho);

/// Full pipeline on one instance: component split, build, separator wiring,
/// greedy warm start, solve, decode, verify, merge. `sep_log`, when set,
/// receives one structured line per separation callback.
SolveReport solve_cpds(const Instance& inst, FormulationKind kind, FormulationOptions options,
                       const milp::SolveLimits& limits, milp::Backend& backend,
                       bool iterative = false, bool warm_start = true,
                       std::ostream* sep_log = nullptr);

/// opt_CPDS(k) via a formulation; throws when a sweep solve hits the limit.
int milp_optimum(const Instance& inst, FormulationKind kind, FormulationOptions options,
                 const milp::SolveLimits& limits, milp::Backend& backend);

}  // namespace cpds

#endif
