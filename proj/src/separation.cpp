#include "cpds/separation.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <stdexcept>

#include "cpds/fort.hpp"

namespace cpds {

using milp::Assignment;
using milp::LazyVerdict;
using milp::Row;

CapFunction decode_rho(const Instance& inst, const VarLayout& layout,
                       const Assignment& assignment) {
  CapFunction rho;
  const int k = inst.capacity();
  for (int v = 0; v < inst.vertex_count(); ++v) {
    if (assignment[layout.s_offset + v] < 0.5) continue;
    std::vector<int> chosen;
    if (inst.degree(v) <= k) {
      chosen = inst.neighbors(v);
    } else {
      for (int u : inst.neighbors(v)) {
        int pos = layout.index.ad_position(v, u);
        if (assignment[layout.w_offset + pos] > 0.5) chosen.push_back(u);
      }
    }
    rho.add(v, std::move(chosen));
  }
  return rho;
}

Separator::Separator(const Instance& inst, const FormulationModel& model, std::uint64_t seed)
    : inst_(inst), layout_(model.layout), kind_(model.kind), seed_(seed) {
  if (kind_ == FormulationKind::efps_ip)
    full_digraph_ = std::make_unique<PrecedenceDigraph>(full_precedence_digraph(inst));
}

bool Separator::remember(const Row& row) {
  std::vector<int> key;
  key.reserve(row.terms.size());
  for (auto [var, coeff] : row.terms) key.push_back(var);
  std::sort(key.begin(), key.end());
  return seen_rows_.insert({std::move(key), row.rhs}).second;
}

LazyVerdict Separator::operator()(const Assignment& assignment) {
  ++calls_;
  const auto started = std::chrono::steady_clock::now();
  LazyVerdict verdict = kind_ == FormulationKind::fort_ip ? separate_fort(assignment)
                                                          : separate_propagation(assignment);
  seconds_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (log_) {
    int unmonitored = 0;
    if (!verdict.feasible) {
      CalcTrace trace = monitored_set(inst_, decode_rho(inst_, layout_, assignment));
      unmonitored = inst_.vertex_count() - trace.monitored_count;
    }
    *log_ << "sep mode=" << (kind_ == FormulationKind::fort_ip ? "fort"
                             : kind_ == FormulationKind::fps_ip ? "fps" : "efps")
          << " call=" << calls_ << " unmonitored=" << unmonitored
          << " cuts=" << verdict.rows.size() << " cum_sep_s=" << seconds_ << "\n";
  }
  return verdict;
}

LazyVerdict Separator::separate_propagation(const Assignment& assignment) {
  CapFunction rho = decode_rho(inst_, layout_, assignment);
  CalcTrace trace = monitored_set(inst_, rho);
  if (trace.all_monitored()) return LazyVerdict::ok();

  // active propagation set F = {(u,v) : y_uv = 1}
  std::vector<Propagation> active;
  for (std::size_t i = 0; i < layout_.index.a_p.size(); ++i)
    if (assignment[layout_.y_offset + static_cast<int>(i)] > 0.5)
      active.push_back(layout_.index.a_p[i]);
  PrecedenceDigraph dg = precedence_digraph(inst_, active);

  std::vector<char> unmonitored(inst_.vertex_count(), 0);
  for (int v = 0; v < inst_.vertex_count(); ++v) unmonitored[v] = trace.is_monitored(v) ? 0 : 1;

  std::vector<Row> rows;
  Row fallback;
  for (int start = 0; start < inst_.vertex_count(); ++start) {
    if (!unmonitored[start]) continue;
    std::uint64_t walk_seed = seed_ ^ (static_cast<std::uint64_t>(calls_) << 32) ^
                              (static_cast<std::uint64_t>(start) * 0x9e3779b97f4a7c15ull);
    auto cycle = find_cycle_from(dg, start, unmonitored, walk_seed);
    // every start succeeds when the assignment satisfies the coverage rows;
    // points fed in from outside the solver may leave some starts cycle-less
    if (!cycle) continue;
    Cycle chordless = trim_to_chordless(dg, *cycle);
    Row row;
    if (kind_ == FormulationKind::fps_ip) {
      Fps fps = minimal_fps_from_cycle(dg, chordless, walk_seed + 1);
      for (const auto& p : fps.props)
        row.terms.push_back({layout_.y_offset + layout_.index.ap_position(p.from, p.to), 1.0});
      row.rhs = static_cast<double>(fps.props.size()) - 1.0;
      row.name = "fps";
    } else {
      Efps efps = efps_from_cycle(*full_digraph_, chordless);
      for (const auto& p : efps.props)
        row.terms.push_back({layout_.y_offset + layout_.index.ap_position(p.from, p.to), 1.0});
      row.rhs = static_cast<double>(efps.bound);
      row.name = "efps";
    }
    row.sense = Row::Sense::le;
    if (row.violation(assignment.value) <= milp::kViolationTol)
      throw std::logic_error("separation: generated row is not violated");
    if (fallback.terms.empty()) fallback = row;
    if (remember(row)) {
      rows.push_back(std::move(row));
      ++cuts_;
    } else {
      ++duplicates_;
    }
  }
  if (rows.empty()) {
    if (fallback.terms.empty())
      throw std::logic_error("separation: no unmonitored vertex yields a cycle");
    // every cut was emitted before (possible when an earlier batch was
    // discarded, e.g. a rejected warm start); re-adding a violated row is
    // sound and keeps the loop progressing
    rows.push_back(std::move(fallback));
    ++cuts_;
  }
  return LazyVerdict::cut(std::move(rows));
}

LazyVerdict Separator::separate_fort(const Assignment& assignment) {
  CapFunction rho = decode_rho(inst_, layout_, assignment);
  CalcTrace trace = monitored_set(inst_, rho);
  if (trace.all_monitored()) return LazyVerdict::ok();
  Fort fort = minimize_fort(inst_, fort_from_infeasible(inst_, trace));
  Row row;
  for (int v : fort.members) row.terms.push_back({layout_.s_offset + v, 1.0});
  for (int v : fort.boundary)
    if (inst_.degree(v) <= inst_.capacity())
      row.terms.push_back({layout_.s_offset + v, 1.0});
  for (const auto& [v, inside] : fort.capacitated_boundary)
    for (int u : inside)
      row.terms.push_back({layout_.w_offset + layout_.index.ad_position(v, u), 1.0});
  row.sense = Row::Sense::ge;
  row.rhs = 1.0;
  row.name = "fort";
  if (row.violation(assignment.value) <= milp::kViolationTol)
    throw std::logic_error("separation: fort row is not violated");
  if (!remember(row)) ++duplicates_;
  ++cuts_;
  return LazyVerdict::cut({std::move(row)});
}

std::shared_ptr<Separator> attach_separator(FormulationModel& model, const Instance& inst,
                                            std::uint64_t seed) {
  if (model.kind == FormulationKind::bri_ip || model.kind == FormulationKind::jov_ip)
    return nullptr;
  auto separator = std::make_shared<Separator>(inst, model, seed);
  model.spec.lazy = [separator](const Assignment& assignment) {
    return (*separator)(assignment);
  };
  model.spec.lazy_id = formulation_name(model.kind, model.options) + "-separator";
  return separator;
}

}  // namespace cpds
