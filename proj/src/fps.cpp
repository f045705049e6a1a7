#include "cpds/fps.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cpds {

std::vector<Precedence> psi(const Instance& inst, const Propagation& p) {
  if (p.from < 0 || p.from >= inst.vertex_count() || !inst.is_zero_injection(p.from) ||
      !inst.has_edge(p.from, p.to))
    throw std::logic_error("psi: propagation not in A_P");
  std::vector<Precedence> out;
  out.push_back({p.from, p.to});
  for (int w : inst.neighbors(p.from))
    if (w != p.to) out.push_back({w, p.to});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Propagation> phi(const Instance& inst, const Precedence& e) {
  std::vector<Propagation> out;
  for (int u : inst.neighbors(e.to)) {
    if (!inst.is_zero_injection(u)) continue;
    // e.from in N[u] \ {e.to}
    if (u == e.from || inst.has_edge(u, e.from)) out.push_back({u, e.to});
  }
  std::sort(out.begin(), out.end());
  return out;
}

PrecedenceDigraph::PrecedenceDigraph(int n, const std::vector<Propagation>& props,
                                     const Instance& inst)
    : n_(n), props_(props) {
  in_sources_.assign(n, {});
  imposers_.assign(n, {});
  std::vector<std::vector<std::pair<int, Propagation>>> raw(n);
  for (const auto& p : props_) {
    raw[p.to].push_back({p.from, p});
    for (int w : inst.neighbors(p.from))
      if (w != p.to) raw[p.to].push_back({w, p});
  }
  for (int v = 0; v < n; ++v) {
    auto& bucket = raw[v];
    std::sort(bucket.begin(), bucket.end(),
              [](const auto& a, const auto& b) { return std::tie(a.first, a.second) < std::tie(b.first, b.second); });
    for (std::size_t i = 0; i < bucket.size();) {
      int w = bucket[i].first;
      in_sources_[v].push_back(w);
      imposers_[v].emplace_back();
      auto& list = imposers_[v].back();
      while (i < bucket.size() && bucket[i].first == w) {
        if (list.empty() || !(list.back() == bucket[i].second)) list.push_back(bucket[i].second);
        ++i;
      }
      ++arc_count_;
    }
  }
}

std::vector<Precedence> PrecedenceDigraph::arcs() const {
  std::vector<Precedence> out;
  for (int v = 0; v < n_; ++v)
    for (int w : in_sources_[v]) out.push_back({w, v});
  return out;
}

bool PrecedenceDigraph::has_arc(int from, int to) const {
  if (to < 0 || to >= n_) return false;
  const auto& src = in_sources_[to];
  return std::binary_search(src.begin(), src.end(), from);
}

const std::vector<Propagation>& PrecedenceDigraph::imposers(const Precedence& e) const {
  if (e.to < 0 || e.to >= n_) return empty_;
  const auto& src = in_sources_[e.to];
  auto it = std::lower_bound(src.begin(), src.end(), e.from);
  if (it == src.end() || *it != e.from) return empty_;
  return imposers_[e.to][it - src.begin()];
}

PrecedenceDigraph precedence_digraph(const Instance& inst, const std::vector<Propagation>& props) {
  for (const auto& p : props)
    if (p.from < 0 || p.from >= inst.vertex_count() || !inst.is_zero_injection(p.from) ||
        !inst.has_edge(p.from, p.to))
      throw std::logic_error("precedence_digraph: propagation not in A_P");
  return PrecedenceDigraph(inst.vertex_count(), props, inst);
}

PrecedenceDigraph full_precedence_digraph(const Instance& inst) {
  return precedence_digraph(inst, build_propagation_index(inst).a_p);
}

std::vector<int> Cycle::vertices() const {
  std::vector<int> out;
  out.reserve(arcs.size());
  for (const auto& a : arcs) out.push_back(a.from);
  return out;
}

bool Cycle::contains_vertex(int v) const {
  for (const auto& a : arcs)
    if (a.from == v) return true;
  return false;
}

void Cycle::canonicalize() {
  if (arcs.empty()) return;
  std::size_t best = 0;
  for (std::size_t i = 1; i < arcs.size(); ++i)
    if (arcs[i].from < arcs[best].from) best = i;
  std::rotate(arcs.begin(), arcs.begin() + best, arcs.end());
}

bool is_cycle_of(const PrecedenceDigraph& dg, const Cycle& cycle) {
  if (cycle.arcs.empty()) return false;
  std::set<int> seen;
  for (std::size_t i = 0; i < cycle.arcs.size(); ++i) {
    const auto& a = cycle.arcs[i];
    const auto& next = cycle.arcs[(i + 1) % cycle.arcs.size()];
    if (a.to != next.from) return false;
    if (!dg.has_arc(a.from, a.to)) return false;
    if (!seen.insert(a.from).second) return false;
  }
  return true;
}

bool has_cycle(const PrecedenceDigraph& dg) {
  const int n = dg.vertex_count();
  // Kahn on the reversed digraph (we store in-adjacency)
  std::vector<int> out_degree(n, 0);
  for (int v = 0; v < n; ++v)
    for (int w : dg.in_sources(v)) ++out_degree[w];
  std::vector<int> stack;
  for (int v = 0; v < n; ++v)
    if (out_degree[v] == 0) stack.push_back(v);
  int removed = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++removed;
    for (int w : dg.in_sources(v))
      if (--out_degree[w] == 0) stack.push_back(w);
  }
  return removed != n;
}

namespace {

void cycle_dfs(const PrecedenceDigraph& dg,
               const std::vector<std::vector<int>>& out_adj, int root, int v,
               std::vector<char>& on_path, std::vector<int>& path, std::size_t& count,
               std::size_t cap) {
  if (count >= cap) return;
  for (int w : out_adj[v]) {
    if (w < root) continue;  // cycles are rooted at their minimum vertex
    if (w == root) {
      ++count;
      if (count >= cap) return;
    } else if (!on_path[w]) {
      on_path[w] = 1;
      path.push_back(w);
      cycle_dfs(dg, out_adj, root, w, on_path, path, count, cap);
      path.pop_back();
      on_path[w] = 0;
    }
  }
}

}  // namespace

std::size_t count_simple_cycles(const PrecedenceDigraph& dg, std::size_t cap) {
  const int n = dg.vertex_count();
  std::vector<std::vector<int>> out_adj(n);
  for (int v = 0; v < n; ++v)
    for (int w : dg.in_sources(v)) out_adj[w].push_back(v);
  std::size_t count = 0;
  std::vector<char> on_path(n, 0);
  std::vector<int> path;
  for (int root = 0; root < n && count < cap; ++root) {
    on_path[root] = 1;
    path.push_back(root);
    cycle_dfs(dg, out_adj, root, root, on_path, path, count, cap);
    path.pop_back();
    on_path[root] = 0;
  }
  return count;
}

std::optional<Cycle> find_cycle_from(const PrecedenceDigraph& dg, int start,
                                     const std::vector<char>& unmonitored,
                                     std::uint64_t seed) {
  if (start < 0 || start >= dg.vertex_count() || !unmonitored[start]) return std::nullopt;
  std::mt19937_64 rng(seed);
  // Backward walk through random unmonitored predecessors until a vertex
  // repeats. Under the separation preconditions every unmonitored vertex has
  // an unmonitored predecessor and the plain walk succeeds; on arbitrary
  // inputs dead ends are possible, so exhausted vertices are abandoned and
  // the walk backtracks.
  std::vector<int> position(dg.vertex_count(), -1);
  std::vector<char> dead(dg.vertex_count(), 0);
  struct Frame {
    int vertex;
    std::vector<int> candidates;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  std::vector<int> walk;
  auto push = [&](int v) {
    Frame frame;
    frame.vertex = v;
    for (int w : dg.in_sources(v))
      if (unmonitored[w] && !dead[w]) frame.candidates.push_back(w);
    std::shuffle(frame.candidates.begin(), frame.candidates.end(), rng);
    position[v] = static_cast<int>(walk.size());
    walk.push_back(v);
    stack.push_back(std::move(frame));
  };
  push(start);
  while (!stack.empty()) {
    Frame& frame = stack.back();
    if (frame.next >= frame.candidates.size()) {
      dead[frame.vertex] = 1;
      position[frame.vertex] = -1;
      walk.pop_back();
      stack.pop_back();
      continue;
    }
    int chosen = frame.candidates[frame.next++];
    if (dead[chosen]) continue;
    if (position[chosen] >= 0) {
      // arcs run against the walk: (walk[i+1], walk[i]) plus (chosen, walk.back())
      const int first = position[chosen];
      const int last = static_cast<int>(walk.size()) - 1;
      Cycle cycle;
      cycle.arcs.push_back({chosen, walk[last]});
      for (int i = last; i > first; --i) cycle.arcs.push_back({walk[i], walk[i - 1]});
      cycle.canonicalize();
      return cycle;
    }
    push(chosen);
  }
  return std::nullopt;
}

Cycle trim_to_chordless(const PrecedenceDigraph& dg, const Cycle& cycle) {
  Cycle current = cycle;
  while (true) {
    const int r = current.length();
    if (r <= 2) break;  // 2-cycles have no possible chord
    std::vector<int> verts = current.vertices();
    int chord_i = -1, chord_j = -1;
    for (int i = 0; i < r && chord_i < 0; ++i) {
      for (int j = 0; j < r; ++j) {
        if (j == i || j == (i + 1) % r) continue;
        if (dg.has_arc(verts[i], verts[j])) {
          chord_i = i;
          chord_j = j;
          break;
        }
      }
    }
    if (chord_i < 0) break;
    Cycle next;
    next.arcs.push_back({verts[chord_i], verts[chord_j]});
    for (int t = chord_j; t != chord_i; t = (t + 1) % r) next.arcs.push_back(current.arcs[t]);
    current = std::move(next);
  }
  current.canonicalize();
  return current;
}

bool is_chordless(const PrecedenceDigraph& dg, const Cycle& cycle) {
  const int r = cycle.length();
  std::vector<int> verts = cycle.vertices();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (j == i || j == (i + 1) % r) continue;
      if (dg.has_arc(verts[i], verts[j])) return false;
    }
  return true;
}

Fps minimal_fps_from_cycle(const PrecedenceDigraph& dg, const Cycle& cycle, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Fps out;
  out.witness = cycle;
  for (const auto& arc : cycle.arcs) {
    const auto& candidates = dg.imposers(arc);
    if (candidates.empty())
      throw std::logic_error("minimal_fps_from_cycle: cycle arc has no imposer in F");
    out.props.push_back(candidates[rng() % candidates.size()]);
  }
  std::sort(out.props.begin(), out.props.end());
  if (std::adjacent_find(out.props.begin(), out.props.end()) != out.props.end())
    throw std::logic_error("minimal_fps_from_cycle: duplicate choice");
  return out;
}

Efps efps_from_cycle(const PrecedenceDigraph& full_dg, const Cycle& cycle) {
  Efps out;
  out.cycle = cycle;
  out.bound = cycle.length() - 1;
  for (const auto& arc : cycle.arcs) {
    const auto& list = full_dg.imposers(arc);
    out.props.insert(out.props.end(), list.begin(), list.end());
  }
  std::sort(out.props.begin(), out.props.end());
  out.props.erase(std::unique(out.props.begin(), out.props.end()), out.props.end());
  return out;
}

namespace {

Cycle two_cycle(int u, int v) {
  Cycle c;
  c.arcs = {{u, v}, {v, u}};
  c.canonicalize();
  return c;
}

}  // namespace

std::vector<Fps> enumerate_f2(const Instance& inst) {
  const int n = inst.vertex_count();
  std::set<std::pair<Propagation, Propagation>> seen;
  std::vector<Fps> out;
  auto emit = [&](Propagation p, Propagation q, int cu, int cv) {
    if (q < p) std::swap(p, q);
    if (!seen.insert({p, q}).second) return;
    Fps f;
    f.props = {p, q};
    f.witness = two_cycle(cu, cv);
    out.push_back(std::move(f));
  };
  for (int u = 0; u < n; ++u) {
    if (!inst.is_zero_injection(u)) continue;
    const auto& nu = inst.neighbors(u);
    // case (iii): two outgoing propagations from one vertex
    for (std::size_t i = 0; i < nu.size(); ++i)
      for (std::size_t j = i + 1; j < nu.size(); ++j)
        emit({u, nu[i]}, {u, nu[j]}, nu[i], nu[j]);
    for (int v : nu) {
      if (inst.is_zero_injection(v) && u < v) {
        // case (i): adjacent zero-injection pair
        emit({u, v}, {v, u}, u, v);
      }
      if (inst.is_zero_injection(v)) {
        // case (ii): edge (u,v) in V_P plus a common neighbor w
        for (int w : nu)
          if (w != v && inst.has_edge(v, w)) emit({u, v}, {v, w}, v, w);
      }
    }
  }
  // case (iv): two distinct zero-injection vertices x,w with common neighbors u,v
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      std::vector<int> common;
      for (int x : inst.neighbors(u))
        if (inst.is_zero_injection(x) && inst.has_edge(x, v)) common.push_back(x);
      for (int x : common)
        for (int w : common)
          if (x != w) emit({x, u}, {w, v}, u, v);
    }
  }
  return out;
}

std::vector<Efps> enumerate_c2(const Instance& inst) {
  PrecedenceDigraph dg = full_precedence_digraph(inst);
  std::vector<Efps> out;
  for (int v = 0; v < dg.vertex_count(); ++v) {
    for (int w : dg.in_sources(v)) {
      if (w >= v) continue;
      if (!dg.has_arc(v, w)) continue;
      out.push_back(efps_from_cycle(dg, two_cycle(w, v)));
    }
  }
  return out;
}

std::string to_dot(const Instance& inst, const PrecedenceDigraph& dg) {
  std::ostringstream out;
  out << "digraph precedence {\n";
  for (int v = 0; v < dg.vertex_count(); ++v)
    out << "  \"" << inst.label(v) << "\""
        << (inst.is_zero_injection(v) ? " [shape=box]" : "") << ";\n";
  for (int v = 0; v < dg.vertex_count(); ++v) {
    for (int w : dg.in_sources(v)) {
      out << "  \"" << inst.label(w) << "\" -> \"" << inst.label(v) << "\" [label=\"";
      const auto& list = dg.imposers({w, v});
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (i) out << ",";
        out << inst.label(list[i].from) << ">" << inst.label(list[i].to);
      }
      out << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace cpds
