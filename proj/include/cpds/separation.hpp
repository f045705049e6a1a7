#ifndef CPDS_SEPARATION_HPP
#define CPDS_SEPARATION_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "cpds/formulations.hpp"
#include "cpds/fps.hpp"
#include "cpds/instance.hpp"
#include "cpds/milp.hpp"
#include "cpds/propagation.hpp"

namespace cpds {

/// S_rho = {v : s_v = 1}; rho(u) = N(u) when deg(u) <= k, else {v : w_uv = 1}.
CapFunction decode_rho(const Instance& inst, const VarLayout& layout,
                       const milp::Assignment& assignment);

/// Stateful lazy-row generator shared by callback and iterative modes. Cuts
/// are deduplicated globally per solve by canonical row form. FPS/EFPS modes
/// run the cycle separation with one cut per unmonitored start vertex; fort
/// mode emits the minimized fort row.
class Separator {
public:
  Separator(const Instance& inst, const FormulationModel& model, std::uint64_t seed);

  milp::LazyVerdict operator()(const milp::Assignment& assignment);

  [[nodiscard]] long calls() const { return calls_; }
  [[nodiscard]] long cuts() const { return cuts_; }
  [[nodiscard]] long duplicates_skipped() const { return duplicates_; }

  /// One structured line per callback: mode, unmonitored count, cuts emitted,
  /// cumulative separation time.
  void set_log(std::ostream* log) { log_ = log; }

private:
  milp::LazyVerdict separate_propagation(const milp::Assignment& assignment);
  milp::LazyVerdict separate_fort(const milp::Assignment& assignment);
  bool remember(const milp::Row& row);

  const Instance& inst_;
  VarLayout layout_;
  FormulationKind kind_;
  std::uint64_t seed_;
  long calls_ = 0;
  long cuts_ = 0;
  long duplicates_ = 0;
  double seconds_ = 0.0;
  std::ostream* log_ = nullptr;
  std::unique_ptr<PrecedenceDigraph> full_digraph_;  // EFPS preprocessing
  std::set<std::pair<std::vector<int>, double>> seen_rows_;
};

/// Wires a Separator into model.spec.lazy for the lazily separated kinds.
/// Returns the separator (shared with the callback) or nullptr for compact
/// formulations.
std::shared_ptr<Separator> attach_separator(FormulationModel& model, const Instance& inst,
                                            std::uint64_t seed);

}  // namespace cpds

#endif
