#include "cpds/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace cpds {

namespace {

/// Iterates k-subsets of `pool` lexicographically.
struct SubsetIter {
  const std::vector<int>& pool;
  std::vector<int> pick;
  bool done = false;

  SubsetIter(const std::vector<int>& pool_, int k) : pool(pool_) {
    if (k > static_cast<int>(pool.size())) {
      done = true;
      return;
    }
    for (int i = 0; i < k; ++i) pick.push_back(i);
  }

  [[nodiscard]] std::vector<int> current() const {
    std::vector<int> out;
    out.reserve(pick.size());
    for (int i : pick) out.push_back(pool[i]);
    return out;
  }

  void advance() {
    const int k = static_cast<int>(pick.size());
    const int n = static_cast<int>(pool.size());
    if (k == 0) {
      done = true;
      return;
    }
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) {
      done = true;
      return;
    }
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
};

/// Recursively assigns rho over the placed set; returns true when some
/// capacitated choice monitors everything.
bool search_assignments(const Instance& inst, const std::vector<int>& placed, std::size_t at,
                        CapFunction& rho, long& nodes) {
  if (at == placed.size()) {
    ++nodes;
    return monitored_set(inst, rho).all_monitored();
  }
  const int u = placed[at];
  const int k = inst.capacity();
  if (inst.degree(u) <= k) {
    rho.add(u, inst.neighbors(u));
    return search_assignments(inst, placed, at + 1, rho, nodes);
  }
  SubsetIter subsets(inst.neighbors(u), k);
  while (!subsets.done) {
    rho.add(u, subsets.current());
    if (search_assignments(inst, placed, at + 1, rho, nodes)) return true;
    subsets.advance();
  }
  return false;
}

}  // namespace

OracleResult brute_force_cpds(const Instance& inst, int size_bound) {
  const int n = inst.vertex_count();
  if (n > size_bound) throw std::logic_error("brute_force_cpds: instance exceeds size bound");
  std::vector<int> all(n);
  for (int v = 0; v < n; ++v) all[v] = v;
  OracleResult result;
  for (int size = 0; size <= n; ++size) {
    SubsetIter sets(all, size);
    while (!sets.done) {
      std::vector<int> placed = sets.current();
      // optimistic check: if even uncapacitated placement fails, skip
      CapFunction optimistic;
      for (int u : placed) optimistic.add(u, inst.neighbors(u));
      ++result.nodes_enumerated;
      if (monitored_set(inst, optimistic).all_monitored()) {
        CapFunction rho;
        for (int u : placed) rho.add(u, {});
        if (search_assignments(inst, placed, 0, rho, result.nodes_enumerated)) {
          result.optimum = size;
          result.witness = rho;
          return result;
        }
      }
      sets.advance();
    }
  }
  throw std::logic_error("brute_force_cpds: no feasible placement (unreachable)");
}

OracleResult brute_force_pds(const Instance& inst, int size_bound) {
  return brute_force_cpds(inst.with_capacity(inst.max_degree()), size_bound);
}

int k_star(const Instance& inst, const std::function<int(const Instance&)>& cpds_optimum) {
  const int delta = inst.max_degree();
  const int pds_opt = cpds_optimum(inst.with_capacity(delta));
  for (int k = 0; k <= delta; ++k) {
    if (cpds_optimum(inst.with_capacity(k)) == pds_opt) return k;
  }
  return delta;  // k = delta always qualifies
}

}  // namespace cpds
