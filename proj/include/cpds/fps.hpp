#ifndef CPDS_FPS_HPP
#define CPDS_FPS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cpds/instance.hpp"

namespace cpds {

/// Requirement that `from` be monitored before `to`; an arc of a precedence
/// digraph.
struct Precedence {
  int from = -1;
  int to = -1;
  friend bool operator==(const Precedence&, const Precedence&) = default;
  friend auto operator<=>(const Precedence&, const Precedence&) = default;
};

/// psi(u,v) = {(w,v) : w in N[u] \ {v}}. Throws std::logic_error if (u,v) is
/// not a propagation of A_P.
std::vector<Precedence> psi(const Instance& inst, const Propagation& p);

/// phi(w,v) = {(u,v) in A_P : w in N[u] \ {v}}; empty when nothing imposes it.
std::vector<Propagation> phi(const Instance& inst, const Precedence& e);

/// Digraph D_R = (V, psi(R)) plus the per-arc back-map arc -> phi(arc) ∩ R.
class PrecedenceDigraph {
public:
  PrecedenceDigraph() = default;
  PrecedenceDigraph(int n, const std::vector<Propagation>& props, const Instance& inst);

  [[nodiscard]] int vertex_count() const { return n_; }
  [[nodiscard]] std::size_t arc_count() const { return arc_count_; }
  [[nodiscard]] bool has_arc(int from, int to) const;
  /// Sources of arcs entering `to`, ascending.
  [[nodiscard]] const std::vector<int>& in_sources(int to) const { return in_sources_[to]; }
  /// phi(e) ∩ R for an arc e of the digraph; empty vector if e is not an arc.
  [[nodiscard]] const std::vector<Propagation>& imposers(const Precedence& e) const;
  [[nodiscard]] const std::vector<Propagation>& propagation_set() const { return props_; }
  [[nodiscard]] std::vector<Precedence> arcs() const;

private:
  int n_ = 0;
  std::size_t arc_count_ = 0;
  std::vector<Propagation> props_;
  std::vector<std::vector<int>> in_sources_;
  std::vector<std::vector<std::vector<Propagation>>> imposers_;
  std::vector<Propagation> empty_;
};

/// Builds D_R; every element of R must lie in A_P.
PrecedenceDigraph precedence_digraph(const Instance& inst, const std::vector<Propagation>& props);

/// D = D_{A_P}, the digraph of all potential propagations.
PrecedenceDigraph full_precedence_digraph(const Instance& inst);

/// Simple directed cycle ((v1,v2),...,(vr,v1)), all vertices distinct.
struct Cycle {
  std::vector<Precedence> arcs;
  [[nodiscard]] int length() const { return static_cast<int>(arcs.size()); }
  [[nodiscard]] std::vector<int> vertices() const;
  [[nodiscard]] bool contains_vertex(int v) const;
  /// Rotate so the minimum vertex id leads; used for deduplication.
  void canonicalize();
  friend bool operator==(const Cycle&, const Cycle&) = default;
};

bool is_cycle_of(const PrecedenceDigraph& dg, const Cycle& cycle);
bool has_cycle(const PrecedenceDigraph& dg);

/// Simple-cycle count by exhaustive search, stopping at `cap`. Test-scale only.
std::size_t count_simple_cycles(const PrecedenceDigraph& dg, std::size_t cap = 1000);

/// Backward walk from `start` through unmonitored predecessors until a vertex
/// repeats. Deterministic given the seed. Returns nothing only when the walk
/// gets stuck, which contradicts the caller's precondition.
std::optional<Cycle> find_cycle_from(const PrecedenceDigraph& dg, int start,
                                     const std::vector<char>& unmonitored,
                                     std::uint64_t seed);

/// Greedy chord elimination: while some chord (u,v) exists, replace the cycle
/// by (u,v) plus the cycle path from v to u. The first chord in (source
/// position, target position) order is taken.
Cycle trim_to_chordless(const PrecedenceDigraph& dg, const Cycle& cycle);

bool is_chordless(const PrecedenceDigraph& dg, const Cycle& cycle);

/// Propagation set whose precedence digraph contains the witness cycle.
struct Fps {
  std::vector<Propagation> props;  // sorted
  Cycle witness;
};

/// phi(C) with the |C|-1 propagation budget.
struct Efps {
  Cycle cycle;
  std::vector<Propagation> props;  // sorted phi(C)
  int bound = 0;
};

/// One propagation per cycle arc, drawn from phi(e) ∩ F (seeded choice); the
/// result minimally imposes the cycle and, for chordless cycles, is a minimal
/// FPS. Throws std::logic_error if some arc has no imposer in F.
Fps minimal_fps_from_cycle(const PrecedenceDigraph& dg, const Cycle& cycle, std::uint64_t seed);

/// phi(C) of a cycle of the full digraph D.
Efps efps_from_cycle(const PrecedenceDigraph& full_dg, const Cycle& cycle);

/// The family F_2(G,V_P) of all two-element FPSs, via its four-case
/// characterization, deduplicated, each with its witness 2-cycle.
std::vector<Fps> enumerate_f2(const Instance& inst);

/// One EFPS per unordered 2-cycle of D.
std::vector<Efps> enumerate_c2(const Instance& inst);

/// DOT text of the digraph with the imposing propagations on each arc.
std::string to_dot(const Instance& inst, const PrecedenceDigraph& dg);

}  // namespace cpds

#endif
