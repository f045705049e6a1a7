#ifndef CPDS_SIMPLEX_HPP
#define CPDS_SIMPLEX_HPP

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace cpds {
namespace milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Dense-tableau simplex over bounded variables, driven by the dual method.
///
/// The all-slack basis with nonbasic columns at their cheaper bound is dual
/// feasible for any objective, so every (re)optimization runs the dual
/// simplex: after branching bound changes and after appended rows the basis
/// stays dual feasible and the method warm starts. Tailored for the branch
/// and bound driver; not a general-purpose LP code.
class DenseSimplex {
public:
  enum class Status { optimal, infeasible, iteration_limit, aborted };

  int add_column(double lower, double upper, double objective);
  /// sense: 'L' (<=), 'G' (>=), 'E' (=). Returns the row index.
  int add_row(const std::vector<std::pair<int, double>>& terms, char sense, double rhs);

  [[nodiscard]] int column_count() const { return static_cast<int>(lower_.size()); }
  [[nodiscard]] int structural_count() const { return structural_count_; }
  [[nodiscard]] int row_count() const { return static_cast<int>(tableau_.size()); }

  void set_bounds(int col, double lower, double upper);
  [[nodiscard]] double lower_bound(int col) const { return lower_[col]; }
  [[nodiscard]] double upper_bound(int col) const { return upper_[col]; }

  /// Re-optimize with the dual simplex. `should_stop` is polled periodically;
  /// returning true aborts with Status::aborted.
  Status reoptimize(long max_iterations = 2000000,
                    const std::function<bool()>& should_stop = {});

  [[nodiscard]] double objective_value() const;
  [[nodiscard]] double column_value(int col) const;
  [[nodiscard]] double reduced_cost(int col) const { return reduced_cost_[col]; }
  [[nodiscard]] bool is_basic(int col) const { return basic_row_[col] >= 0; }
  [[nodiscard]] long iterations() const { return iterations_; }

  /// Max primal bound violation over basic variables (diagnostics).
  [[nodiscard]] double primal_infeasibility() const;

private:
  struct Violation {
    int row = -1;
    double amount = 0.0;
    bool below = false;
  };
  struct OriginalRow {
    std::vector<std::pair<int, double>> terms;
    double rhs;
  };

  Violation worst_violation(bool bland) const;
  void pivot(int row, int col, bool leaving_to_upper);
  void refresh_basic_values();
  void refresh_reduced_costs();
  /// Rescue for degenerate stalling: fresh all-slack basis under the current
  /// bounds (dual feasible by construction), rebuilt from the original rows.
  void rebuild_from_scratch();

  int structural_count_ = 0;
  std::vector<double> lower_, upper_, objective_;
  std::vector<OriginalRow> original_rows_;
  std::vector<std::vector<double>> tableau_;  // B^{-1} A, all columns, dense rows
  std::vector<double> rhs_;                   // B^{-1} b
  std::vector<int> basic_var_;                // per row
  std::vector<int> basic_row_;                // per column, -1 when nonbasic
  std::vector<char> at_upper_;                // nonbasic position flag
  std::vector<double> value_;                 // nonbasic: bound value; basic: cached
  std::vector<double> basic_value_;           // per row
  std::vector<double> reduced_cost_;
  long iterations_ = 0;
  long since_refresh_ = 0;
};

}  // namespace milp
}  // namespace cpds

#endif
