#ifndef CPDS_MILP_HPP
#define CPDS_MILP_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cpds {
namespace milp {

inline constexpr double kIntegralityTol = 1e-6;
inline constexpr double kViolationTol = 1e-6;

struct Var {
  enum class Kind { binary, integer };
  Kind kind = Kind::binary;
  double lower = 0.0;
  double upper = 1.0;
  std::string name;
  int branch_priority = 0;  // higher classes branch first
};

struct Row {
  enum class Sense { le, ge, eq };
  std::vector<std::pair<int, double>> terms;  // (variable id, coefficient)
  Sense sense = Sense::le;
  double rhs = 0.0;
  std::string name;

  [[nodiscard]] double activity(const std::vector<double>& x) const;
  [[nodiscard]] double violation(const std::vector<double>& x) const;
};

struct Assignment {
  std::vector<double> value;
  [[nodiscard]] double operator[](int var) const { return value[var]; }
};

/// Verdict of a lazy-row generator on an integer-feasible assignment: either
/// feasible, or a non-empty batch of rows each violated by that assignment.
struct LazyVerdict {
  bool feasible = true;
  std::vector<Row> rows;
  static LazyVerdict ok() { return {}; }
  static LazyVerdict cut(std::vector<Row> rows_) { return {false, std::move(rows_)}; }
};

using LazyGenerator = std::function<LazyVerdict(const Assignment&)>;

struct ModelSpec {
  std::string name;
  std::vector<Var> vars;
  std::vector<double> objective;  // minimize; one coefficient per variable
  std::vector<Row> rows;
  LazyGenerator lazy;             // optional
  std::string lazy_id;            // callback identity, for reports
  /// Optional full-model-feasible starting point (used as initial incumbent).
  std::optional<std::vector<double>> warm_start;

  int add_var(Var v);
  int add_binary(const std::string& name);
  int add_integer(const std::string& name, double lower, double upper);
  void add_row(Row row);
  void set_objective(int var, double coeff);
  /// Throws std::logic_error when a row references an undeclared variable or
  /// an integer variable has non-finite bounds.
  void validate() const;
};

enum class SolveStatus { optimal, time_limit, infeasible };

struct SolveStats {
  long nodes = 0;
  long simplex_iterations = 0;
  long lazy_rows_added = 0;
  long lazy_calls = 0;
  double separation_seconds = 0.0;
  double wall_seconds = 0.0;
  double root_relaxation = 0.0;
  int initial_rows = 0;
  int variables = 0;
};

struct SolveOutput {
  SolveStatus status = SolveStatus::infeasible;
  double objective = 0.0;       // incumbent value when one exists
  bool has_assignment = false;
  Assignment assignment;
  double best_bound = 0.0;
  SolveStats stats;
  /// Lazy rows materialized during the solve; re-solving the model with these
  /// appended and no callback reproduces the optimum.
  std::vector<Row> added_rows;
};

struct SolveLimits {
  double time_limit_s = 900.0;
  int threads = 1;
  std::uint64_t seed = 0;
  long max_lp_iterations = 2000000;  // per node re-optimization
};

/// Backend failures surface as this error, never as an infeasible status.
struct BackendError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Backend {
public:
  virtual ~Backend() = default;
  [[nodiscard]] virtual std::string name() const = 0;
  /// Solve honoring model.lazy via integer-solution callbacks when present.
  virtual SolveOutput solve(const ModelSpec& model, const SolveLimits& limits) = 0;
};

/// The in-repo exact backend: bounded-variable dual simplex plus DFS branch
/// and bound, with lazy-row injection at integer nodes.
std::unique_ptr<Backend> make_bnb_backend();

SolveOutput solve(const ModelSpec& model, const SolveLimits& limits, Backend& backend);

/// Cutting-plane outer loop for backends without callbacks (or on request):
/// repeatedly solve to optimality, separate the incumbent, materialize the cut
/// rows, and re-solve. Converges to the same optimum as callback mode.
SolveOutput iterative_lazy_loop(const ModelSpec& model, const SolveLimits& limits,
                                Backend& backend, long max_iterations = 100000);

/// Standard LP-format text (objective, constraints, bounds, generals, binaries).
std::string to_lp_format(const ModelSpec& model);

}  // namespace milp
}  // namespace cpds

#endif
