#include "cpds/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cpds {
namespace milp {

namespace {
constexpr double kPivotTol = 1e-8;
constexpr double kFeasTol = 1e-7;
constexpr double kDualTol = 1e-9;
constexpr long kRefreshEvery = 256;
}  // namespace

int DenseSimplex::add_column(double lower, double upper, double objective) {
  if (!tableau_.empty())
    throw std::logic_error("DenseSimplex: structural columns must precede rows");
  int col = static_cast<int>(lower_.size());
  lower_.push_back(lower);
  upper_.push_back(upper);
  objective_.push_back(objective);
  basic_row_.push_back(-1);
  at_upper_.push_back(0);
  // dual-feasible start: sit at the bound matching the cost sign
  double start;
  if (objective >= 0.0) {
    start = std::isfinite(lower) ? lower : 0.0;
  } else {
    start = std::isfinite(upper) ? upper : 0.0;
    at_upper_.back() = 1;
  }
  value_.push_back(start);
  reduced_cost_.push_back(objective);
  structural_count_ = col + 1;
  return col;
}

int DenseSimplex::add_row(const std::vector<std::pair<int, double>>& terms, char sense,
                          double rhs) {
  // slack column
  double slo = 0.0, sup = 0.0;
  if (sense == 'L') {
    slo = 0.0;
    sup = kInf;
  } else if (sense == 'G') {
    slo = -kInf;
    sup = 0.0;
  } else if (sense != 'E') {
    throw std::logic_error("DenseSimplex: bad row sense");
  }
  const int slack = static_cast<int>(lower_.size());
  lower_.push_back(slo);
  upper_.push_back(sup);
  objective_.push_back(0.0);
  basic_row_.push_back(-1);
  at_upper_.push_back(0);
  value_.push_back(0.0);
  reduced_cost_.push_back(0.0);
  for (auto& row : tableau_) row.push_back(0.0);

  const int cols = static_cast<int>(lower_.size());
  std::vector<double> row(cols, 0.0);
  for (auto [col, coeff] : terms) {
    if (col < 0 || col >= slack) throw std::logic_error("DenseSimplex: bad column in row");
    row[col] += coeff;
  }
  row[slack] = 1.0;
  {
    OriginalRow original;
    for (int j = 0; j < slack; ++j)
      if (row[j] != 0.0) original.terms.push_back({j, row[j]});
    original.rhs = rhs;
    original_rows_.push_back(std::move(original));
  }
  double reduced_rhs = rhs;
  // express in the current basis: eliminate the basic columns (they form an
  // identity across existing tableau rows)
  for (int r = 0; r < row_count(); ++r) {
    double factor = row[basic_var_[r]];
    if (std::fabs(factor) < 1e-12) continue;
    const auto& trow = tableau_[r];
    for (int j = 0; j < cols; ++j) row[j] -= factor * trow[j];
    row[basic_var_[r]] = 0.0;
    reduced_rhs -= factor * rhs_[r];
  }
  double activity = 0.0;
  for (int j = 0; j < cols; ++j)
    if (j != slack && basic_row_[j] < 0 && row[j] != 0.0) activity += row[j] * value_[j];
  tableau_.push_back(std::move(row));
  rhs_.push_back(reduced_rhs);
  int r = row_count() - 1;
  basic_var_.push_back(slack);
  basic_row_[slack] = r;
  basic_value_.push_back(reduced_rhs - activity);
  value_[slack] = basic_value_.back();
  return r;
}

void DenseSimplex::set_bounds(int col, double lower, double upper) {
  lower_[col] = lower;
  upper_[col] = upper;
  if (basic_row_[col] >= 0) return;  // basic: the next reoptimize handles it
  // Nonbasic columns must sit on the side their reduced cost asks for, or the
  // dual-simplex optimality test lies after a relaxation un-fixes them.
  bool to_upper;
  double d = reduced_cost_[col];
  if (lower == upper) {
    to_upper = at_upper_[col] != 0;
  } else if (d > kDualTol) {
    to_upper = false;
  } else if (d < -kDualTol) {
    to_upper = true;
  } else {
    to_upper = at_upper_[col] != 0;
  }
  double target = to_upper ? upper : lower;
  if (!std::isfinite(target)) {
    to_upper = !to_upper;
    target = to_upper ? upper : lower;
  }
  at_upper_[col] = to_upper ? 1 : 0;
  double delta = target - value_[col];
  if (delta == 0.0) return;
  value_[col] = target;
  for (int r = 0; r < row_count(); ++r) {
    double coeff = tableau_[r][col];
    if (coeff != 0.0) {
      basic_value_[r] -= coeff * delta;
      value_[basic_var_[r]] = basic_value_[r];
    }
  }
}

double DenseSimplex::objective_value() const {
  double total = 0.0;
  for (int j = 0; j < column_count(); ++j)
    if (objective_[j] != 0.0) total += objective_[j] * column_value(j);
  return total;
}

double DenseSimplex::column_value(int col) const {
  int r = basic_row_[col];
  return r >= 0 ? basic_value_[r] : value_[col];
}

double DenseSimplex::primal_infeasibility() const {
  double worst = 0.0;
  for (int r = 0; r < row_count(); ++r) {
    int v = basic_var_[r];
    worst = std::max(worst, lower_[v] - basic_value_[r]);
    worst = std::max(worst, basic_value_[r] - upper_[v]);
  }
  return worst;
}

DenseSimplex::Violation DenseSimplex::worst_violation(bool bland) const {
  Violation out;
  for (int r = 0; r < row_count(); ++r) {
    int v = basic_var_[r];
    double below = lower_[v] - basic_value_[r];
    double above = basic_value_[r] - upper_[v];
    double amount = std::max(below, above);
    if (amount <= kFeasTol) continue;
    if (bland) {
      if (out.row < 0 || v < basic_var_[out.row]) out = {r, amount, below > above};
    } else if (amount > out.amount) {
      out = {r, amount, below > above};
    }
  }
  return out;
}

void DenseSimplex::refresh_basic_values() {
  const int cols = column_count();
  for (int r = 0; r < row_count(); ++r) {
    double activity = 0.0;
    const auto& row = tableau_[r];
    for (int j = 0; j < cols; ++j)
      if (basic_row_[j] < 0 && row[j] != 0.0 && value_[j] != 0.0) activity += row[j] * value_[j];
    basic_value_[r] = rhs_[r] - activity;
    value_[basic_var_[r]] = basic_value_[r];
  }
}

void DenseSimplex::rebuild_from_scratch() {
  const int cols = column_count();
  const int rows = row_count();
  for (int r = 0; r < rows; ++r) {
    auto& row = tableau_[r];
    std::fill(row.begin(), row.end(), 0.0);
    for (auto [j, coeff] : original_rows_[r].terms) row[j] = coeff;
    const int slack = structural_count_ + r;
    row[slack] = 1.0;
    rhs_[r] = original_rows_[r].rhs;
    basic_var_[r] = slack;
  }
  for (int j = 0; j < cols; ++j) {
    basic_row_[j] = -1;
    reduced_cost_[j] = objective_[j];
    if (j >= structural_count_) continue;
    // nonbasic at the dual-feasible side for the all-slack basis (d = c)
    bool to_upper = objective_[j] < 0.0 && std::isfinite(upper_[j]);
    if (!to_upper && !std::isfinite(lower_[j])) to_upper = std::isfinite(upper_[j]);
    at_upper_[j] = to_upper ? 1 : 0;
    value_[j] = to_upper ? upper_[j] : lower_[j];
    if (!std::isfinite(value_[j])) value_[j] = 0.0;
  }
  for (int r = 0; r < rows; ++r) {
    const int slack = structural_count_ + r;
    basic_row_[slack] = r;
    at_upper_[slack] = 0;
    double activity = 0.0;
    for (auto [j, coeff] : original_rows_[r].terms) activity += coeff * value_[j];
    basic_value_[r] = rhs_[r] - activity;
    value_[slack] = basic_value_[r];
  }
  since_refresh_ = 0;
}

void DenseSimplex::refresh_reduced_costs() {
  const int cols = column_count();
  std::vector<double> cb(row_count());
  bool any = false;
  for (int r = 0; r < row_count(); ++r) {
    cb[r] = objective_[basic_var_[r]];
    if (cb[r] != 0.0) any = true;
  }
  for (int j = 0; j < cols; ++j) reduced_cost_[j] = objective_[j];
  if (!any) return;
  for (int r = 0; r < row_count(); ++r) {
    if (cb[r] == 0.0) continue;
    const auto& row = tableau_[r];
    for (int j = 0; j < cols; ++j)
      if (row[j] != 0.0) reduced_cost_[j] -= cb[r] * row[j];
  }
}

void DenseSimplex::pivot(int r, int e, bool leaving_to_upper) {
  const int cols = column_count();
  const int q = basic_var_[r];
  auto& prow = tableau_[r];
  const double piv = prow[e];
  const double target = leaving_to_upper ? upper_[q] : lower_[q];

  // entering variable moves so the leaving one lands on its bound
  const double delta_e = (basic_value_[r] - target) / piv;
  const double new_e_value = value_[e] + delta_e;
  for (int i = 0; i < row_count(); ++i) {
    if (i == r) continue;
    double coeff = tableau_[i][e];
    if (coeff != 0.0) basic_value_[i] -= coeff * delta_e;
  }

  const double inv = 1.0 / piv;
  for (int j = 0; j < cols; ++j) prow[j] *= inv;
  rhs_[r] *= inv;
  prow[e] = 1.0;
  for (int i = 0; i < row_count(); ++i) {
    if (i == r) continue;
    auto& row = tableau_[i];
    double factor = row[e];
    if (std::fabs(factor) < 1e-13) {
      row[e] = 0.0;
      continue;
    }
    for (int j = 0; j < cols; ++j) row[j] -= factor * prow[j];
    row[e] = 0.0;
    rhs_[i] -= factor * rhs_[r];
  }
  const double de = reduced_cost_[e];
  if (de != 0.0) {
    for (int j = 0; j < cols; ++j)
      if (prow[j] != 0.0) reduced_cost_[j] -= de * prow[j];
  }
  reduced_cost_[e] = 0.0;

  basic_var_[r] = e;
  basic_row_[e] = r;
  basic_row_[q] = -1;
  at_upper_[q] = leaving_to_upper ? 1 : 0;
  value_[q] = target;
  basic_value_[r] = new_e_value;
  value_[e] = new_e_value;
  for (int i = 0; i < row_count(); ++i) value_[basic_var_[i]] = basic_value_[i];
}

DenseSimplex::Status DenseSimplex::reoptimize(long max_iterations,
                                              const std::function<bool()>& should_stop) {
  // The dual objective is non-decreasing across dual pivots, so a long
  // stretch without growth flags degenerate cycling: first rescue with a
  // fresh basis, then fall back to Bland's rule for guaranteed progress.
  bool reset_done = false;
  bool bland = false;
  long stagnant_blocks = 0;
  double last_objective = -kInf;
  for (long iter = 0; iter < max_iterations; ++iter) {
    if (should_stop && (iter & 63) == 0 && should_stop()) return Status::aborted;
    if ((iter & 511) == 511) {
      double z = objective_value();
      if (z > last_objective + 1e-9) {
        last_objective = z;
        stagnant_blocks = 0;
      } else if (++stagnant_blocks >= 2) {
        if (!reset_done) {
          rebuild_from_scratch();
          reset_done = true;
          stagnant_blocks = 0;
          last_objective = -kInf;
          continue;
        }
        bland = true;
      }
    }
    if (since_refresh_ >= kRefreshEvery) {
      refresh_basic_values();
      refresh_reduced_costs();
      since_refresh_ = 0;
    }
    Violation viol = worst_violation(bland);
    if (viol.row < 0) return Status::optimal;

    const int r = viol.row;
    const auto& prow = tableau_[r];
    // transform to an "above upper" violation: alpha = direction * row
    const double direction = viol.below ? -1.0 : 1.0;
    int entering = -1;
    double best_ratio = kInf;
    double best_alpha = 0.0;
    const int cols = column_count();
    for (int j = 0; j < cols; ++j) {
      if (basic_row_[j] >= 0) continue;
      if (lower_[j] == upper_[j]) continue;  // fixed columns cannot move
      double alpha = direction * prow[j];
      if (std::fabs(alpha) <= kPivotTol) continue;
      bool eligible = at_upper_[j] ? alpha < 0.0 : alpha > 0.0;
      if (!eligible) continue;
      double ratio = reduced_cost_[j] / alpha;
      if (ratio < -1e-7) ratio = 0.0;  // numerical guard: treat as degenerate
      bool better;
      if (bland) {
        better = entering < 0 || (ratio < best_ratio - kDualTol) ||
                 (ratio < best_ratio + kDualTol && j < entering);
      } else {
        better = entering < 0 || ratio < best_ratio - kDualTol ||
                 (ratio < best_ratio + kDualTol && std::fabs(alpha) > std::fabs(best_alpha));
      }
      if (better) {
        entering = j;
        best_ratio = ratio;
        best_alpha = alpha;
      }
    }
    if (entering < 0) return Status::infeasible;
    pivot(r, entering, /*leaving_to_upper=*/!viol.below);
    ++iterations_;
    ++since_refresh_;
  }
  return Status::iteration_limit;
}

}  // namespace milp
}  // namespace cpds
