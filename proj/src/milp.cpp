#include "cpds/milp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cpds {
namespace milp {

namespace {
constexpr double kInfBound = 1e100;
}

double Row::activity(const std::vector<double>& x) const {
  double total = 0.0;
  for (auto [var, coeff] : terms) total += coeff * x[var];
  return total;
}

double Row::violation(const std::vector<double>& x) const {
  double a = activity(x);
  switch (sense) {
    case Sense::le: return a - rhs;
    case Sense::ge: return rhs - a;
    case Sense::eq: return std::fabs(a - rhs);
  }
  return 0.0;
}

int ModelSpec::add_var(Var v) {
  vars.push_back(std::move(v));
  objective.push_back(0.0);
  return static_cast<int>(vars.size()) - 1;
}

int ModelSpec::add_binary(const std::string& name_) {
  Var v;
  v.kind = Var::Kind::binary;
  v.lower = 0.0;
  v.upper = 1.0;
  v.name = name_;
  return add_var(std::move(v));
}

int ModelSpec::add_integer(const std::string& name_, double lower, double upper) {
  Var v;
  v.kind = Var::Kind::integer;
  v.lower = lower;
  v.upper = upper;
  v.name = name_;
  return add_var(std::move(v));
}

void ModelSpec::add_row(Row row) { rows.push_back(std::move(row)); }

void ModelSpec::set_objective(int var, double coeff) { objective[var] = coeff; }

void ModelSpec::validate() const {
  if (objective.size() != vars.size()) throw std::logic_error("model: objective size mismatch");
  for (const auto& v : vars)
    if (!std::isfinite(v.lower) || !std::isfinite(v.upper) || v.lower > v.upper)
      throw std::logic_error("model: variable bounds must be finite and ordered");
  for (const auto& r : rows)
    for (auto [var, coeff] : r.terms) {
      if (var < 0 || var >= static_cast<int>(vars.size()))
        throw std::logic_error("model: row references undeclared variable");
      if (!std::isfinite(coeff)) throw std::logic_error("model: non-finite coefficient");
    }
}

SolveOutput solve(const ModelSpec& model, const SolveLimits& limits, Backend& backend) {
  model.validate();
  return backend.solve(model, limits);
}

SolveOutput iterative_lazy_loop(const ModelSpec& model, const SolveLimits& limits,
                                Backend& backend, long max_iterations) {
  model.validate();
  if (!model.lazy) return backend.solve(model, limits);

  ModelSpec work = model;
  work.lazy = nullptr;
  const auto started = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  };

  double last_bound = -kInfBound;
  SolveStats total;
  total.variables = static_cast<int>(model.vars.size());
  total.initial_rows = static_cast<int>(model.rows.size());

  for (long round = 0; round < max_iterations; ++round) {
    SolveLimits inner = limits;
    inner.time_limit_s = limits.time_limit_s - elapsed();
    if (inner.time_limit_s <= 0.0) {
      SolveOutput out;
      out.status = SolveStatus::time_limit;
      out.best_bound = last_bound;
      out.stats = total;
      out.stats.wall_seconds = elapsed();
      return out;
    }
    SolveOutput got = backend.solve(work, inner);
    total.nodes += got.stats.nodes;
    total.simplex_iterations += got.stats.simplex_iterations;
    total.root_relaxation = round == 0 ? got.stats.root_relaxation : total.root_relaxation;

    if (got.status == SolveStatus::infeasible) {
      got.stats = total;
      got.stats.wall_seconds = elapsed();
      return got;
    }
    if (got.status == SolveStatus::time_limit) {
      SolveOutput out;
      out.status = SolveStatus::time_limit;
      out.best_bound = std::max(got.best_bound, last_bound);
      out.stats = total;
      out.stats.wall_seconds = elapsed();
      return out;
    }
    // optimal for the relaxed row set: ask the separator
    const auto sep_start = std::chrono::steady_clock::now();
    LazyVerdict verdict = model.lazy(got.assignment);
    total.separation_seconds +=
        std::chrono::duration<double>(std::chrono::steady_clock::now() - sep_start).count();
    ++total.lazy_calls;
    if (verdict.feasible) {
      got.stats = total;
      got.stats.wall_seconds = elapsed();
      got.added_rows.assign(work.rows.begin() + model.rows.size(), work.rows.end());
      return got;
    }
    if (verdict.rows.empty())
      throw BackendError("lazy generator returned an empty cut batch");
    for (const auto& row : verdict.rows) {
      if (row.violation(got.assignment.value) <= kViolationTol)
        throw std::logic_error("lazy row not violated by the triggering assignment");
      work.rows.push_back(row);
      ++total.lazy_rows_added;
    }
    last_bound = got.objective;  // optimum of a relaxation of the full model
  }
  throw BackendError("iterative lazy loop exceeded its iteration guard");
}

std::string to_lp_format(const ModelSpec& model) {
  std::ostringstream out;
  out << "\\ " << (model.name.empty() ? "model" : model.name) << "\n";
  out << "Minimize\n obj:";
  bool any = false;
  for (std::size_t j = 0; j < model.vars.size(); ++j) {
    double c = model.objective[j];
    if (c == 0.0) continue;
    out << (c < 0 ? " - " : (any ? " + " : " ")) << std::fabs(c) << " " << model.vars[j].name;
    any = true;
  }
  if (!any) out << " 0 " << (model.vars.empty() ? "x0" : model.vars[0].name);
  out << "\nSubject To\n";
  for (std::size_t i = 0; i < model.rows.size(); ++i) {
    const auto& row = model.rows[i];
    out << " " << (row.name.empty() ? "c" + std::to_string(i) : row.name) << ":";
    bool first = true;
    for (auto [var, coeff] : row.terms) {
      if (coeff == 0.0) continue;
      out << (coeff < 0 ? " - " : (first ? " " : " + ")) << std::fabs(coeff) << " "
          << model.vars[var].name;
      first = false;
    }
    if (first) out << " 0 " << model.vars[0].name;
    const char* sense = row.sense == Row::Sense::le ? "<=" : row.sense == Row::Sense::ge ? ">=" : "=";
    out << " " << sense << " " << row.rhs << "\n";
  }
  out << "Bounds\n";
  for (const auto& v : model.vars)
    if (v.kind == Var::Kind::integer) out << " " << v.lower << " <= " << v.name << " <= " << v.upper << "\n";
  out << "Generals\n";
  for (const auto& v : model.vars)
    if (v.kind == Var::Kind::integer) out << " " << v.name << "\n";
  out << "Binaries\n";
  for (const auto& v : model.vars)
    if (v.kind == Var::Kind::binary) out << " " << v.name << "\n";
  out << "End\n";
  return out.str();
}

}  // namespace milp
}  // namespace cpds
