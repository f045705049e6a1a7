#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cpds/milp.hpp"
#include "cpds/simplex.hpp"

namespace cpds {
namespace milp {

namespace {

constexpr double kFracTol = 1e-6;
const double kInfD = std::numeric_limits<double>::infinity();

char sense_char(Row::Sense s) {
  switch (s) {
    case Row::Sense::le: return 'L';
    case Row::Sense::ge: return 'G';
    case Row::Sense::eq: return 'E';
  }
  return 'L';
}

struct Run {
  const ModelSpec& model;
  const SolveLimits& limits;
  DenseSimplex lp;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();
  bool integral_objective = true;
  bool hit_time_limit = false;
  bool have_incumbent = false;
  std::vector<double> incumbent;
  double incumbent_value = 0.0;
  double open_bound = kInfD;
  SolveStats stats;
  std::vector<Row> added_rows;
  long lazy_guard = 100000;
  bool root_lp_captured = false;

  Run(const ModelSpec& model_, const SolveLimits& limits_) : model(model_), limits(limits_) {}

  [[nodiscard]] double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  }
  [[nodiscard]] bool out_of_time() const { return elapsed() >= limits.time_limit_s; }

  /// Smallest objective value a subtree with LP bound z could still attain.
  [[nodiscard]] double lifted(double z) const {
    return integral_objective ? std::ceil(z - 1e-6) : z;
  }

  [[nodiscard]] bool pruned_by_bound(double bound) const {
    if (!have_incumbent) return false;
    return bound >= incumbent_value - (integral_objective ? 0.5 : 1e-9);
  }

  [[nodiscard]] int pick_fractional() const {
    int best = -1;
    double best_score = kFracTol;
    int best_priority = std::numeric_limits<int>::min();
    for (int j = 0; j < static_cast<int>(model.vars.size()); ++j) {
      double v = lp.column_value(j);
      double frac = v - std::floor(v);
      double score = std::min(frac, 1.0 - frac);
      if (score <= kFracTol) continue;
      int prio = model.vars[j].branch_priority;
      if (best < 0 || prio > best_priority ||
          (prio == best_priority && score > best_score + 1e-12)) {
        best = j;
        best_score = score;
        best_priority = prio;
      }
    }
    return best;
  }

  [[nodiscard]] std::vector<double> rounded_assignment() const {
    std::vector<double> x(model.vars.size());
    for (int j = 0; j < static_cast<int>(model.vars.size()); ++j) {
      double v = lp.column_value(j);
      x[j] = std::round(v);
      if (std::fabs(x[j] - v) > 1e-4) x[j] = v;  // should not happen at integral nodes
    }
    return x;
  }

  [[nodiscard]] double true_objective(const std::vector<double>& x) const {
    double total = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) total += model.objective[j] * x[j];
    return total;
  }

  void install_incumbent(std::vector<double> x) {
    double value = true_objective(x);
    if (!have_incumbent || value < incumbent_value - 1e-12) {
      incumbent = std::move(x);
      incumbent_value = value;
      have_incumbent = true;
    }
  }

  bool try_warm_start() {
    if (!model.warm_start) return false;
    const auto& ws = *model.warm_start;
    if (ws.size() != model.vars.size()) return false;
    for (std::size_t j = 0; j < ws.size(); ++j) {
      const auto& v = model.vars[j];
      if (ws[j] < v.lower - 1e-9 || ws[j] > v.upper + 1e-9) return false;
      if (std::fabs(ws[j] - std::round(ws[j])) > kIntegralityTol) return false;
    }
    for (const auto& row : model.rows)
      if (row.violation(ws) > kViolationTol) return false;
    if (model.lazy) {
      const auto sep_start = std::chrono::steady_clock::now();
      LazyVerdict verdict = model.lazy(Assignment{ws});
      stats.separation_seconds +=
          std::chrono::duration<double>(std::chrono::steady_clock::now() - sep_start).count();
      ++stats.lazy_calls;
      if (!verdict.feasible) return false;
    }
    install_incumbent(ws);
    return true;
  }

  void add_lazy_rows(const std::vector<Row>& rows, const std::vector<double>& trigger) {
    for (const auto& row : rows) {
      if (row.violation(trigger) <= kViolationTol)
        throw std::logic_error("lazy row not violated by the triggering assignment");
      lp.add_row(row.terms, sense_char(row.sense), row.rhs);
      added_rows.push_back(row);
      ++stats.lazy_rows_added;
    }
  }

  void reduced_cost_fixing() {
    if (!have_incumbent || !integral_objective) return;
    // sensitivity is taken from the raw LP optimum, not the lifted bound
    const double slack = incumbent_value - 1.0 + 1e-6 - lp.objective_value();
    if (slack < 0) return;
    for (int j = 0; j < static_cast<int>(model.vars.size()); ++j) {
      if (lp.is_basic(j)) continue;
      double lo = lp.lower_bound(j), up = lp.upper_bound(j);
      if (lo == up) continue;
      double d = lp.reduced_cost(j);
      double v = lp.column_value(j);
      if (d > 1e-9 && v <= lo + 1e-9) {
        // raising j by t costs at least d*t
        double max_step = slack / d;
        double new_up = std::floor(lo + max_step + 1e-9);
        if (new_up < up) lp.set_bounds(j, lo, std::max(lo, new_up));
      } else if (d < -1e-9 && v >= up - 1e-9) {
        double max_step = slack / (-d);
        double new_lo = std::ceil(up - max_step - 1e-9);
        if (new_lo > lo) lp.set_bounds(j, std::min(up, new_lo), up);
      }
    }
  }

  /// Solve the LP at the current node; handles lazy separation at integral
  /// points. Returns false when the subtree is finished (pruned, fathomed or
  /// integral), true when a branching variable was selected (stored in
  /// *branch_var).
  bool process_node(double inherited_bound, int* branch_var, double* node_bound) {
    while (true) {
      if (out_of_time()) {
        hit_time_limit = true;
        open_bound = std::min(open_bound, inherited_bound);
        return false;
      }
      auto stop = [this] { return out_of_time(); };
      DenseSimplex::Status st = lp.reoptimize(limits.max_lp_iterations, stop);
      stats.simplex_iterations = lp.iterations();
      if (st == DenseSimplex::Status::aborted) {
        hit_time_limit = true;
        open_bound = std::min(open_bound, inherited_bound);
        return false;
      }
      if (st == DenseSimplex::Status::iteration_limit)
        throw BackendError("simplex iteration limit exceeded");
      if (st == DenseSimplex::Status::infeasible) return false;
      if (!root_lp_captured) {
        stats.root_relaxation = lp.objective_value();
        root_lp_captured = true;
      }

      double bound = lifted(lp.objective_value());
      *node_bound = std::max(bound, inherited_bound);
      if (pruned_by_bound(*node_bound)) return false;

      int j = pick_fractional();
      if (j >= 0) {
        *branch_var = j;
        return true;
      }
      std::vector<double> x = rounded_assignment();
      if (model.lazy) {
        if (--lazy_guard < 0) throw BackendError("lazy callback guard tripped");
        const auto sep_start = std::chrono::steady_clock::now();
        LazyVerdict verdict = model.lazy(Assignment{x});
        stats.separation_seconds +=
            std::chrono::duration<double>(std::chrono::steady_clock::now() - sep_start).count();
        ++stats.lazy_calls;
        if (!verdict.feasible) {
          if (verdict.rows.empty())
            throw BackendError("lazy generator returned an empty cut batch");
          add_lazy_rows(verdict.rows, x);
          continue;  // re-solve this node with the new rows
        }
      }
      install_incumbent(std::move(x));
      return false;
    }
  }

  void explore(double inherited_bound, int depth) {
    ++stats.nodes;
    int branch_var = -1;
    double node_bound = inherited_bound;
    if (!process_node(inherited_bound, &branch_var, &node_bound)) return;
    if (depth == 0) reduced_cost_fixing();

    const double value = lp.column_value(branch_var);
    const double fl = std::floor(value);
    const double old_lo = lp.lower_bound(branch_var);
    const double old_up = lp.upper_bound(branch_var);
    const bool down_first = (value - fl) < 0.5;

    for (int child = 0; child < 2; ++child) {
      if (hit_time_limit) {
        open_bound = std::min(open_bound, node_bound);
        return;
      }
      const bool down = (child == 0) == down_first;
      if (down)
        lp.set_bounds(branch_var, old_lo, fl);
      else
        lp.set_bounds(branch_var, fl + 1.0, old_up);
      explore(node_bound, depth + 1);
      lp.set_bounds(branch_var, old_lo, old_up);
    }
  }

  SolveOutput execute() {
    for (double c : model.objective)
      if (std::fabs(c - std::round(c)) > 1e-12) integral_objective = false;
    for (std::size_t j = 0; j < model.vars.size(); ++j)
      lp.add_column(model.vars[j].lower, model.vars[j].upper, model.objective[j]);
    for (const auto& row : model.rows) lp.add_row(row.terms, sense_char(row.sense), row.rhs);
    stats.variables = static_cast<int>(model.vars.size());
    stats.initial_rows = static_cast<int>(model.rows.size());

    try_warm_start();
    explore(-kInfD, 0);
    stats.wall_seconds = elapsed();
    stats.simplex_iterations = lp.iterations();

    SolveOutput out;
    out.stats = stats;
    out.added_rows = std::move(added_rows);
    if (hit_time_limit) {
      out.status = SolveStatus::time_limit;
      out.best_bound = std::min(open_bound, have_incumbent ? incumbent_value : kInfD);
      if (have_incumbent) {
        out.objective = incumbent_value;
        out.assignment.value = incumbent;
        out.has_assignment = true;
      }
      return out;
    }
    if (!have_incumbent) {
      out.status = SolveStatus::infeasible;
      return out;
    }
    out.status = SolveStatus::optimal;
    out.objective = incumbent_value;
    out.best_bound = incumbent_value;
    out.assignment.value = incumbent;
    out.has_assignment = true;
    return out;
  }
};

class BnbBackend final : public Backend {
public:
  [[nodiscard]] std::string name() const override { return "bnb-dual-simplex"; }

  SolveOutput solve(const ModelSpec& model, const SolveLimits& limits) override {
    Run run(model, limits);
    return run.execute();
  }
};

}  // namespace

std::unique_ptr<Backend> make_bnb_backend() { return std::make_unique<BnbBackend>(); }

}  // namespace milp
}  // namespace cpds
