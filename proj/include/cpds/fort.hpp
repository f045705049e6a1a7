#ifndef CPDS_FORT_HPP
#define CPDS_FORT_HPP

#include <vector>

#include "cpds/instance.hpp"
#include "cpds/propagation.hpp"

namespace cpds {

/// Non-empty vertex set whose every outside neighbor sees at least two
/// members. Boundary data is kept for building FORT-IP rows.
struct Fort {
  std::vector<int> members;   // sorted
  std::vector<int> boundary;  // N(F), sorted
  /// for each boundary vertex v with deg(v) > k: N(v) ∩ F
  std::vector<std::pair<int, std::vector<int>>> capacitated_boundary;
  bool minimal = false;  // stable under single-vertex removal

  [[nodiscard]] bool contains(int v) const;
};

bool is_fort(const Instance& inst, const std::vector<int>& members);

/// Builds the Fort record (boundary + capacity data) for a member set.
Fort make_fort(const Instance& inst, std::vector<int> members);

/// The unmonitored set of an infeasible trace, as a fort. Throws
/// std::logic_error when the trace monitors everything.
Fort fort_from_infeasible(const Instance& inst, const CalcTrace& trace);

/// Removal scan in decreasing vertex id, iterated to a fixpoint; boundary
/// counts are maintained incrementally. The result admits no single-vertex
/// removal that keeps a non-empty fort.
Fort minimize_fort(const Instance& inst, const Fort& fort);

/// All subset-minimal forts by exhaustive search; test-scale only (n <= ~16).
std::vector<std::vector<int>> enumerate_minimal_forts(const Instance& inst);

}  // namespace cpds

#endif
