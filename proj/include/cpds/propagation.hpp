#ifndef CPDS_PROPAGATION_HPP
#define CPDS_PROPAGATION_HPP

#include <string>
#include <vector>

#include "cpds/instance.hpp"

namespace cpds {

/// A capacitated function rho: placed vertices to monitored neighbor subsets.
struct CapFunction {
  std::vector<int> placed;                      // sorted, unique
  std::vector<std::vector<int>> assignment;     // parallel to placed; subsets of N(u)

  void add(int u, std::vector<int> monitored_neighbors);
  [[nodiscard]] bool is_placed(int u) const;
  [[nodiscard]] const std::vector<int>* monitored_neighbors(int u) const;
  /// Throws std::logic_error unless Dom(assignment)=placed and rho(u) subset of N(u).
  void validate(const Instance& inst) const;
};

/// One rule application. DR steps are recorded per newly monitored vertex, so
/// every step monitors exactly one vertex and traces are proper by construction.
struct CalcStep {
  enum class Rule { DR, PR };
  Rule rule;
  int source;
  int target;
  friend bool operator==(const CalcStep&, const CalcStep&) = default;
};

struct CalcTrace {
  std::vector<CalcStep> steps;
  std::vector<char> monitored;          // final M(rho), indexed by vertex
  std::vector<Propagation> applied_props;  // the PR pairs, in application order
  int monitored_count = 0;

  [[nodiscard]] bool all_monitored() const {
    return monitored_count == static_cast<int>(monitored.size());
  }
  [[nodiscard]] bool is_monitored(int v) const { return monitored[v] != 0; }
};

/// Least fixed point of rules DR and PR from rho, with a proper trace.
CalcTrace monitored_set(const Instance& inst, const CapFunction& rho);

bool is_k_capacitated(const Instance& inst, const CapFunction& rho);

/// True iff rho is k-capacitated and monitors every vertex.
bool is_power_dominating(const Instance& inst, const CapFunction& rho);

/// A removal-style edit to rho.
struct RhoChange {
  enum class Kind { remove_neighbor, remove_placed, none };
  Kind kind = Kind::none;
  int vertex = -1;     // the placed vertex u
  int neighbor = -1;   // for remove_neighbor: drop from rho(u)
};

CapFunction apply_change(const CapFunction& rho, const RhoChange& change);

/// Recompute the trace after a removal without starting from scratch: valid
/// prefix steps are kept, invalidated ones dropped, then the closure re-runs.
CalcTrace incremental_unmonitor(const Instance& inst, const CapFunction& old_rho,
                                const CalcTrace& trace, const RhoChange& change);

/// Text dump, one line per step: `DR u -> v` / `PR u -> v`.
std::string trace_to_text(const Instance& inst, const CalcTrace& trace);

/// Replays a trace from scratch; used by tests to validate properness.
bool replay_matches(const Instance& inst, const CapFunction& rho, const CalcTrace& trace);

/// Greedy upper bound: repeatedly place the vertex whose best capacity-k
/// assignment monitors the most new vertices. Used as a MILP warm start.
CapFunction greedy_solution(const Instance& inst);

}  // namespace cpds

#endif
