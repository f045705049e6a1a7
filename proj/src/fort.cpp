#include "cpds/fort.hpp"

#include <algorithm>
#include <stdexcept>

namespace cpds {

bool Fort::contains(int v) const {
  return std::binary_search(members.begin(), members.end(), v);
}

bool is_fort(const Instance& inst, const std::vector<int>& members) {
  if (members.empty()) return false;
  std::vector<char> in(inst.vertex_count(), 0);
  for (int v : members) in[v] = 1;
  // Only zero-injection boundary vertices can propagate into F, so only they
  // are constrained. With V_P = V this is the classical fort condition.
  for (int v : members) {
    for (int w : inst.neighbors(v)) {
      if (in[w] || !inst.is_zero_injection(w)) continue;
      int count = 0;
      for (int x : inst.neighbors(w)) count += in[x];
      if (count < 2) return false;
    }
  }
  return true;
}

Fort make_fort(const Instance& inst, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Fort fort;
  fort.members = std::move(members);
  std::vector<char> in(inst.vertex_count(), 0);
  for (int v : fort.members) in[v] = 1;
  std::vector<char> on_boundary(inst.vertex_count(), 0);
  for (int v : fort.members)
    for (int w : inst.neighbors(v))
      if (!in[w]) on_boundary[w] = 1;
  for (int v = 0; v < inst.vertex_count(); ++v) {
    if (!on_boundary[v]) continue;
    fort.boundary.push_back(v);
    if (inst.degree(v) > inst.capacity()) {
      std::vector<int> inside;
      for (int x : inst.neighbors(v))
        if (in[x]) inside.push_back(x);
      fort.capacitated_boundary.push_back({v, std::move(inside)});
    }
  }
  return fort;
}

Fort fort_from_infeasible(const Instance& inst, const CalcTrace& trace) {
  if (trace.all_monitored())
    throw std::logic_error("fort_from_infeasible: trace monitors every vertex");
  std::vector<int> members;
  for (int v = 0; v < inst.vertex_count(); ++v)
    if (!trace.is_monitored(v)) members.push_back(v);
  return make_fort(inst, std::move(members));
}

Fort minimize_fort(const Instance& inst, const Fort& fort) {
  const int n = inst.vertex_count();
  std::vector<char> in(n, 0);
  for (int v : fort.members) in[v] = 1;
  int size = static_cast<int>(fort.members.size());
  // inside_count[w] = |N(w) ∩ F| for every vertex
  std::vector<int> inside_count(n, 0);
  for (int w = 0; w < n; ++w)
    for (int x : inst.neighbors(w)) inside_count[w] += in[x];

  auto removable = [&](int v) {
    if (size <= 1) return false;
    // v itself moves to the outside: when zero-injection it needs 0 or >= 2
    // members next to it
    if (inst.is_zero_injection(v) && inside_count[v] == 1) return false;
    // zero-injection outside neighbors of v lose one member
    for (int w : inst.neighbors(v))
      if (!in[w] && inst.is_zero_injection(w) && inside_count[w] == 2) return false;
    return true;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = n - 1; v >= 0; --v) {
      if (!in[v] || !removable(v)) continue;
      in[v] = 0;
      --size;
      for (int w : inst.neighbors(v)) --inside_count[w];
      changed = true;
    }
  }
  std::vector<int> members;
  for (int v = 0; v < n; ++v)
    if (in[v]) members.push_back(v);
  Fort out = make_fort(inst, std::move(members));
  out.minimal = true;
  return out;
}

std::vector<std::vector<int>> enumerate_minimal_forts(const Instance& inst) {
  const int n = inst.vertex_count();
  if (n > 20) throw std::logic_error("enumerate_minimal_forts: instance too large");
  std::vector<std::uint32_t> forts;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> members;
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) members.push_back(v);
    if (is_fort(inst, members)) forts.push_back(mask);
  }
  std::vector<std::vector<int>> out;
  for (std::uint32_t f : forts) {
    bool minimal = true;
    for (std::uint32_t g : forts) {
      if (g != f && (g & f) == g) {
        minimal = false;
        break;
      }
    }
    if (!minimal) continue;
    std::vector<int> members;
    for (int v = 0; v < n; ++v)
      if (f & (1u << v)) members.push_back(v);
    out.push_back(std::move(members));
  }
  return out;
}

}  // namespace cpds
