#include "cpds/propagation.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace cpds {

void CapFunction::add(int u, std::vector<int> monitored_neighbors) {
  auto it = std::lower_bound(placed.begin(), placed.end(), u);
  std::sort(monitored_neighbors.begin(), monitored_neighbors.end());
  if (it != placed.end() && *it == u) {
    assignment[it - placed.begin()] = std::move(monitored_neighbors);
    return;
  }
  auto pos = it - placed.begin();
  placed.insert(it, u);
  assignment.insert(assignment.begin() + pos, std::move(monitored_neighbors));
}

bool CapFunction::is_placed(int u) const {
  return std::binary_search(placed.begin(), placed.end(), u);
}

const std::vector<int>* CapFunction::monitored_neighbors(int u) const {
  auto it = std::lower_bound(placed.begin(), placed.end(), u);
  if (it == placed.end() || *it != u) return nullptr;
  return &assignment[it - placed.begin()];
}

void CapFunction::validate(const Instance& inst) const {
  if (placed.size() != assignment.size())
    throw std::logic_error("CapFunction: Dom(assignment) != placed");
  for (std::size_t i = 0; i < placed.size(); ++i) {
    int u = placed[i];
    if (u < 0 || u >= inst.vertex_count()) throw std::logic_error("CapFunction: vertex out of range");
    if (i > 0 && placed[i - 1] >= u) throw std::logic_error("CapFunction: placed not sorted unique");
    for (std::size_t j = 0; j < assignment[i].size(); ++j) {
      int v = assignment[i][j];
      if (j > 0 && assignment[i][j - 1] >= v)
        throw std::logic_error("CapFunction: rho(u) not sorted unique");
      if (!inst.has_edge(u, v)) throw std::logic_error("CapFunction: rho(u) not within N(u)");
    }
  }
}

namespace {

struct Closure {
  const Instance& inst;
  CalcTrace trace;
  std::vector<int> unmonitored_neighbors;
  std::deque<int> work;

  explicit Closure(const Instance& inst_) : inst(inst_) {
    const int n = inst.vertex_count();
    trace.monitored.assign(n, 0);
    unmonitored_neighbors.resize(n);
    for (int v = 0; v < n; ++v) unmonitored_neighbors[v] = inst.degree(v);
  }

  void consider(int u) {
    if (trace.monitored[u] && inst.is_zero_injection(u) && unmonitored_neighbors[u] == 1)
      work.push_back(u);
  }

  bool mark(int v, CalcStep::Rule rule, int source) {
    if (trace.monitored[v]) return false;
    trace.monitored[v] = 1;
    ++trace.monitored_count;
    trace.steps.push_back({rule, source, v});
    if (rule == CalcStep::Rule::PR) trace.applied_props.push_back({source, v});
    for (int w : inst.neighbors(v)) {
      --unmonitored_neighbors[w];
      consider(w);
    }
    consider(v);
    return true;
  }

  void run() {
    while (!work.empty()) {
      int u = work.front();
      work.pop_front();
      if (!trace.monitored[u] || !inst.is_zero_injection(u) || unmonitored_neighbors[u] != 1)
        continue;
      int target = -1;
      for (int w : inst.neighbors(u)) {
        if (!trace.monitored[w]) {
          target = w;
          break;
        }
      }
      mark(target, CalcStep::Rule::PR, u);
    }
  }
};

}  // namespace

CalcTrace monitored_set(const Instance& inst, const CapFunction& rho) {
  rho.validate(inst);
  Closure closure(inst);
  for (std::size_t i = 0; i < rho.placed.size(); ++i) {
    int u = rho.placed[i];
    closure.mark(u, CalcStep::Rule::DR, u);
    for (int v : rho.assignment[i]) closure.mark(v, CalcStep::Rule::DR, u);
  }
  closure.run();
  return std::move(closure.trace);
}

bool is_k_capacitated(const Instance& inst, const CapFunction& rho) {
  rho.validate(inst);
  const std::size_t k = static_cast<std::size_t>(inst.capacity());
  for (const auto& chosen : rho.assignment)
    if (chosen.size() > k) return false;
  return true;
}

bool is_power_dominating(const Instance& inst, const CapFunction& rho) {
  if (!is_k_capacitated(inst, rho)) return false;
  return monitored_set(inst, rho).all_monitored();
}

CapFunction apply_change(const CapFunction& rho, const RhoChange& change) {
  CapFunction out = rho;
  switch (change.kind) {
    case RhoChange::Kind::none:
      break;
    case RhoChange::Kind::remove_placed: {
      auto it = std::lower_bound(out.placed.begin(), out.placed.end(), change.vertex);
      if (it != out.placed.end() && *it == change.vertex) {
        auto pos = it - out.placed.begin();
        out.placed.erase(it);
        out.assignment.erase(out.assignment.begin() + pos);
      }
      break;
    }
    case RhoChange::Kind::remove_neighbor: {
      auto it = std::lower_bound(out.placed.begin(), out.placed.end(), change.vertex);
      if (it != out.placed.end() && *it == change.vertex) {
        auto& chosen = out.assignment[it - out.placed.begin()];
        chosen.erase(std::remove(chosen.begin(), chosen.end(), change.neighbor), chosen.end());
      }
      break;
    }
  }
  return out;
}

CalcTrace incremental_unmonitor(const Instance& inst, const CapFunction& old_rho,
                                const CalcTrace& trace, const RhoChange& change) {
  CapFunction rho = apply_change(old_rho, change);
  rho.validate(inst);
  Closure closure(inst);
  // DR facts are re-seeded from the edited rho; the old trace only contributes
  // its PR order, so facts that were shadowed in the old run are not lost.
  for (std::size_t i = 0; i < rho.placed.size(); ++i) {
    int u = rho.placed[i];
    closure.mark(u, CalcStep::Rule::DR, u);
    for (int v : rho.assignment[i]) closure.mark(v, CalcStep::Rule::DR, u);
  }
  for (const auto& step : trace.steps) {
    if (step.rule != CalcStep::Rule::PR) continue;
    int u = step.source;
    if (closure.trace.monitored[u] && inst.is_zero_injection(u) &&
        closure.unmonitored_neighbors[u] == 1 && !closure.trace.monitored[step.target])
      closure.mark(step.target, CalcStep::Rule::PR, u);
  }
  closure.run();
  return std::move(closure.trace);
}

std::string trace_to_text(const Instance& inst, const CalcTrace& trace) {
  std::ostringstream out;
  for (const auto& step : trace.steps) {
    out << (step.rule == CalcStep::Rule::DR ? "DR " : "PR ") << inst.label(step.source)
        << " -> " << inst.label(step.target) << "\n";
  }
  return out.str();
}

bool replay_matches(const Instance& inst, const CapFunction& rho, const CalcTrace& trace) {
  const int n = inst.vertex_count();
  std::vector<char> monitored(n, 0);
  std::vector<int> unmon(n);
  for (int v = 0; v < n; ++v) unmon[v] = inst.degree(v);
  int count = 0;
  auto monitor = [&](int v) {
    monitored[v] = 1;
    ++count;
    for (int w : inst.neighbors(v)) --unmon[w];
  };
  for (const auto& step : trace.steps) {
    if (step.target < 0 || step.target >= n || monitored[step.target]) return false;
    if (step.rule == CalcStep::Rule::DR) {
      const auto* chosen = rho.monitored_neighbors(step.source);
      if (chosen == nullptr) return false;
      bool justified = step.target == step.source ||
                       std::binary_search(chosen->begin(), chosen->end(), step.target);
      if (!justified) return false;
    } else {
      int u = step.source;
      if (!monitored[u] || !inst.is_zero_injection(u) || unmon[u] != 1) return false;
      bool target_is_the_gap = !monitored[step.target] && inst.has_edge(u, step.target);
      if (!target_is_the_gap) return false;
    }
    monitor(step.target);
  }
  if (count != trace.monitored_count) return false;
  for (int v = 0; v < n; ++v)
    if ((monitored[v] != 0) != (trace.monitored[v] != 0)) return false;
  // fixed point: no rule still applicable
  for (std::size_t i = 0; i < rho.placed.size(); ++i) {
    if (!monitored[rho.placed[i]]) return false;
    for (int v : rho.assignment[i])
      if (!monitored[v]) return false;
  }
  for (int u = 0; u < n; ++u)
    if (monitored[u] && inst.is_zero_injection(u) && unmon[u] == 1) return false;
  return true;
}

CapFunction greedy_solution(const Instance& inst) {
  const int n = inst.vertex_count();
  const int k = inst.capacity();
  CapFunction rho;
  std::vector<char> monitored(n, 0);
  int covered = 0;
  while (covered < n) {
    int best = -1;
    int best_gain = 0;
    std::vector<int> best_chosen;
    for (int u = 0; u < n; ++u) {
      if (rho.is_placed(u)) continue;
      std::vector<int> chosen;
      if (inst.degree(u) <= k) {
        chosen = inst.neighbors(u);
      } else {
        for (int v : inst.neighbors(u)) {
          if (static_cast<int>(chosen.size()) == k) break;
          if (!monitored[v]) chosen.push_back(v);
        }
        for (int v : inst.neighbors(u)) {
          if (static_cast<int>(chosen.size()) == k) break;
          if (monitored[v]) chosen.push_back(v);
        }
        std::sort(chosen.begin(), chosen.end());
      }
      CapFunction candidate = rho;
      candidate.add(u, chosen);
      CalcTrace t = monitored_set(inst, candidate);
      int gain = t.monitored_count - covered;
      if (gain > best_gain) {
        best_gain = gain;
        best = u;
        best_chosen = std::move(chosen);
      }
    }
    if (best < 0) {
      // every unplaced vertex is already monitored but some placed... cannot
      // happen: placing any unmonitored vertex gains at least itself
      for (int v = 0; v < n; ++v)
        if (!monitored[v]) {
          best = v;
          best_chosen.clear();
          break;
        }
    }
    rho.add(best, best_chosen);
    CalcTrace t = monitored_set(inst, rho);
    monitored = t.monitored;
    covered = t.monitored_count;
  }
  return rho;
}

}  // namespace cpds
