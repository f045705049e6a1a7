#include "cpds/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "cpds/separation.hpp"

namespace cpds {

std::optional<std::vector<double>> encode_solution(const Instance& inst,
                                                   const FormulationModel& model,
                                                   const CapFunction& rho) {
  CalcTrace trace = monitored_set(inst, rho);
  if (!trace.all_monitored()) return std::nullopt;
  std::vector<double> x(model.spec.vars.size(), 0.0);
  const auto& layout = model.layout;
  const int k = inst.capacity();
  for (std::size_t i = 0; i < rho.placed.size(); ++i) {
    const int u = rho.placed[i];
    x[layout.s_offset + u] = 1.0;
    if (inst.degree(u) > k)
      for (int v : rho.assignment[i]) x[layout.w_offset + layout.index.ad_position(u, v)] = 1.0;
  }
  if (layout.y_offset >= 0)
    for (const auto& p : trace.applied_props)
      x[layout.y_offset + layout.index.ap_position(p.from, p.to)] = 1.0;
  if (layout.x_offset >= 0) {
    // timesteps from the proper trace: (DR) at the base, each (PR) one later
    const double base = model.kind == FormulationKind::jov_ip ? 1.0 : 0.0;
    std::vector<double> when(inst.vertex_count(), base);
    double t = base;
    for (const auto& step : trace.steps)
      if (step.rule == CalcStep::Rule::PR) when[step.target] = ++t;
    for (int v = 0; v < inst.vertex_count(); ++v) x[layout.x_offset + v] = when[v];
  }
  return x;
}

namespace {

struct ComponentOutcome {
  milp::SolveOutput output;
  CapFunction rho;
  bool verified = false;
};

ComponentOutcome solve_component(const Instance& comp, FormulationKind kind,
                                 FormulationOptions options, const milp::SolveLimits& limits,
                                 milp::Backend& backend, bool iterative, bool warm_start,
                                 std::ostream* sep_log, SolveReport& report) {
  FormulationModel model = build_model(comp, kind, options);
  auto separator = attach_separator(model, comp, limits.seed);
  if (separator && sep_log) separator->set_log(sep_log);
  if (warm_start) {
    if (auto ws = encode_solution(comp, model, greedy_solution(comp))) model.spec.warm_start = ws;
  }
  ComponentOutcome outcome;
  outcome.output = iterative ? milp::iterative_lazy_loop(model.spec, limits, backend)
                             : milp::solve(model.spec, limits, backend);
  report.vars += static_cast<long>(model.spec.vars.size());
  report.init_rows += outcome.output.stats.initial_rows;
  report.lazy_rows += outcome.output.stats.lazy_rows_added;
  report.sep_s += outcome.output.stats.separation_seconds;
  report.nodes += outcome.output.stats.nodes;

  if (outcome.output.has_assignment) {
    outcome.rho = decode_rho(comp, model.layout, outcome.output.assignment);
    const bool dominating = is_power_dominating(comp, outcome.rho);
    const bool consistent =
        std::llround(outcome.output.objective) == static_cast<long long>(outcome.rho.placed.size());
    outcome.verified = dominating && consistent;
    if (outcome.output.status == milp::SolveStatus::optimal && !outcome.verified)
      throw VerificationError("decoded solution disagrees with the reported optimum on " +
                              comp.name());
  }
  return outcome;
}

}  // namespace

SolveReport solve_cpds(const Instance& inst, FormulationKind kind, FormulationOptions options,
                       const milp::SolveLimits& limits, milp::Backend& backend, bool iterative,
                       bool warm_start, std::ostream* sep_log) {
  const auto started = std::chrono::steady_clock::now();
  SolveReport report;
  report.instance_name = inst.name();
  report.n = inst.vertex_count();
  report.m = inst.edge_count();
  report.k = inst.capacity();
  report.model = formulation_name(kind, options);
  report.seed = limits.seed;

  ComponentSplit split = connected_components(inst);
  report.components = static_cast<int>(split.components.size());

  bool any_time_limit = false;
  bool any_infeasible = false;
  bool all_verified = true;
  double objective = 0.0;
  double bound = 0.0;
  bool have_all_solutions = true;

  for (std::size_t c = 0; c < split.components.size(); ++c) {
    const Instance& comp = split.components[c];
    milp::SolveLimits inner = limits;
    inner.time_limit_s =
        limits.time_limit_s -
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    inner.time_limit_s = std::max(inner.time_limit_s, 0.01);
    ComponentOutcome outcome = solve_component(comp, kind, options, inner, backend, iterative,
                                               warm_start, sep_log, report);

    switch (outcome.output.status) {
      case milp::SolveStatus::optimal: break;
      case milp::SolveStatus::time_limit: any_time_limit = true; break;
      case milp::SolveStatus::infeasible: any_infeasible = true; break;
    }
    bound += std::max(0.0, outcome.output.best_bound);
    if (outcome.output.has_assignment) {
      objective += outcome.output.objective;
      all_verified = all_verified && outcome.verified;
      for (std::size_t i = 0; i < outcome.rho.placed.size(); ++i) {
        int orig = split.to_original[c][outcome.rho.placed[i]];
        std::vector<int> neighbors;
        for (int v : outcome.rho.assignment[i]) neighbors.push_back(split.to_original[c][v]);
        report.rho.add(orig, std::move(neighbors));
      }
    } else {
      have_all_solutions = false;
      all_verified = false;
      objective += comp.vertex_count();  // vertex-count upper bound stands in
    }
  }

  report.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  report.has_solution = have_all_solutions;
  report.verified = have_all_solutions && all_verified;
  report.objective = objective;
  report.bound = std::min(bound, objective);
  if (any_infeasible) {
    report.status = "infeasible";
  } else if (any_time_limit) {
    report.status = "time-limit";
    report.gap = objective > 0 ? (objective - report.bound) / objective : 0.0;
  } else {
    report.status = "optimal";
    report.gap = 0.0;
  }
  return report;
}

int milp_optimum(const Instance& inst, FormulationKind kind, FormulationOptions options,
                 const milp::SolveLimits& limits, milp::Backend& backend) {
  SolveReport report = solve_cpds(inst, kind, options, limits, backend);
  if (report.status != "optimal")
    throw milp::BackendError("solve did not reach optimality for k=" + std::to_string(inst.capacity()));
  return static_cast<int>(std::llround(report.objective));
}

}  // namespace cpds
