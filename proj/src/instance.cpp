#include "cpds/instance.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace cpds {

namespace {

std::uint64_t edge_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

const char* parse_error_name(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::malformed_header: return "malformed header";
    case ParseError::Kind::duplicate_edge: return "duplicate edge";
    case ParseError::Kind::self_loop: return "self-loop";
    case ParseError::Kind::unknown_label: return "unknown vertex label";
    case ParseError::Kind::negative_capacity: return "negative capacity";
    case ParseError::Kind::bad_line: return "bad line";
    case ParseError::Kind::vertex_overflow: return "more vertices than declared";
    case ParseError::Kind::edge_count_mismatch: return "edge count mismatch";
  }
  return "parse error";
}

}  // namespace

ParseError::ParseError(Kind kind_, int line_, const std::string& what_)
    : std::runtime_error("line " + std::to_string(line_) + ": " +
                         parse_error_name(kind_) + (what_.empty() ? "" : ": " + what_)),
      kind(kind_),
      line(line_) {}

Instance::Instance(int n, std::vector<std::pair<int, int>> edges,
                   std::vector<int> zero_injection_vertices, int capacity,
                   std::vector<std::string> labels)
    : n_(n), capacity_(capacity) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  if (capacity < 0) throw std::invalid_argument("negative capacity");
  adj_.assign(n, {});
  zero_injection_.assign(n, 0);
  std::unordered_set<std::uint64_t> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop");
    if (!seen.insert(edge_key(u, v)).second) throw std::invalid_argument("parallel edge");
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  m_ = static_cast<int>(edges.size());
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
  for (int v : zero_injection_vertices) {
    if (v < 0 || v >= n) throw std::invalid_argument("zero-injection vertex out of range");
    zero_injection_[v] = 1;
  }
  if (static_cast<int>(labels.size()) == n) {
    labels_ = std::move(labels);
  } else {
    labels_.resize(n);
    for (int v = 0; v < n; ++v) labels_[v] = std::to_string(v);
  }
}

int Instance::max_degree() const {
  int d = 0;
  for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
  return d;
}

int Instance::zero_injection_count() const {
  int c = 0;
  for (char z : zero_injection_) c += z;
  return c;
}

bool Instance::has_edge(int u, int v) const {
  const auto& nb = adj_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

Instance Instance::with_capacity(int k) const {
  Instance copy = *this;
  if (k < 0) throw std::invalid_argument("negative capacity");
  copy.capacity_ = k;
  return copy;
}

PropagationIndex build_propagation_index(const Instance& inst) {
  PropagationIndex idx;
  const int n = inst.vertex_count();
  const int k = inst.capacity();
  idx.ap_pos_.assign(n, {});
  idx.ad_pos_.assign(n, {});
  idx.ap_by_source.assign(n, {});
  idx.ap_by_target.assign(n, {});
  for (int u = 0; u < n; ++u) {
    if (inst.is_zero_injection(u)) {
      for (int v : inst.neighbors(u)) {
        int pos = static_cast<int>(idx.a_p.size());
        idx.a_p.push_back({u, v});
        idx.ap_pos_[u].push_back({v, pos});
        idx.ap_by_source[u].push_back({v, pos});
        idx.ap_by_target[v].push_back({u, pos});
      }
    }
    if (inst.degree(u) > k) {
      for (int v : inst.neighbors(u)) {
        int pos = static_cast<int>(idx.a_d.size());
        idx.a_d.push_back({u, v});
        idx.ad_pos_[u].push_back({v, pos});
      }
    }
  }
  return idx;
}

int PropagationIndex::ap_position(int u, int v) const {
  if (u < 0 || u >= static_cast<int>(ap_pos_.size())) return -1;
  for (auto [w, pos] : ap_pos_[u])
    if (w == v) return pos;
  return -1;
}

int PropagationIndex::ad_position(int u, int v) const {
  if (u < 0 || u >= static_cast<int>(ad_pos_.size())) return -1;
  for (auto [w, pos] : ad_pos_[u])
    if (w == v) return pos;
  return -1;
}

namespace {

struct LabelTable {
  std::unordered_map<std::string, int> ids;
  std::vector<std::string> labels;
  int limit = 0;

  int get_or_add(const std::string& label, int line) {
    auto it = ids.find(label);
    if (it != ids.end()) return it->second;
    if (static_cast<int>(labels.size()) >= limit)
      throw ParseError(ParseError::Kind::vertex_overflow, line, label);
    int id = static_cast<int>(labels.size());
    ids.emplace(label, id);
    labels.push_back(label);
    return id;
  }
};

}  // namespace

Instance parse_instance(const std::string& text, int capacity) {
  if (capacity < 0) throw ParseError(ParseError::Kind::negative_capacity, 0, std::to_string(capacity));
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_header = false;
  int n = 0, m = 0;
  LabelTable table;
  std::vector<std::pair<int, int>> edges;
  std::unordered_set<std::uint64_t> seen;
  std::vector<int> zi;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;  // blank line
    if (tag == "c") continue;
    if (tag == "p") {
      std::string problem;
      if (have_header || !(ls >> problem >> n >> m) || problem != "cpds" || n < 0 || m < 0)
        throw ParseError(ParseError::Kind::malformed_header, lineno, line);
      have_header = true;
      table.limit = n;
      continue;
    }
    if (!have_header) throw ParseError(ParseError::Kind::malformed_header, lineno, "expected `p cpds <n> <m>` first");
    if (tag == "z") {
      std::string label;
      while (ls >> label) zi.push_back(table.get_or_add(label, lineno));
      continue;
    }
    if (tag == "e") {
      std::string a, b, extra;
      if (!(ls >> a >> b) || (ls >> extra))
        throw ParseError(ParseError::Kind::bad_line, lineno, line);
      int u = table.get_or_add(a, lineno);
      int v = table.get_or_add(b, lineno);
      if (u == v) throw ParseError(ParseError::Kind::self_loop, lineno, a);
      if (!seen.insert(edge_key(u, v)).second)
        throw ParseError(ParseError::Kind::duplicate_edge, lineno, a + " " + b);
      edges.push_back({u, v});
      continue;
    }
    throw ParseError(ParseError::Kind::bad_line, lineno, line);
  }
  if (!have_header) throw ParseError(ParseError::Kind::malformed_header, lineno, "missing `p cpds` line");
  if (static_cast<int>(edges.size()) != m)
    throw ParseError(ParseError::Kind::edge_count_mismatch, lineno,
                     "declared " + std::to_string(m) + ", found " + std::to_string(edges.size()));
  // vertices never named get synthetic labels
  std::vector<std::string> labels = table.labels;
  for (int v = static_cast<int>(labels.size()); v < n; ++v) {
    std::string candidate = std::to_string(v);
    while (table.ids.count(candidate)) candidate = "_" + candidate;
    labels.push_back(candidate);
  }
  return Instance(n, std::move(edges), std::move(zi), capacity, std::move(labels));
}

Instance parse_edge_list(const std::string& text, int capacity) {
  if (capacity < 0) throw ParseError(ParseError::Kind::negative_capacity, 0, std::to_string(capacity));
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  LabelTable table;
  table.limit = 1 << 30;
  std::vector<std::pair<int, int>> edges;
  std::unordered_set<std::uint64_t> seen;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string a, b;
    if (!(ls >> a)) continue;
    if (a == "c" || a[0] == '#') continue;
    if (!(ls >> b)) throw ParseError(ParseError::Kind::bad_line, lineno, line);
    int u = table.get_or_add(a, lineno);
    int v = table.get_or_add(b, lineno);
    if (u == v) throw ParseError(ParseError::Kind::self_loop, lineno, a);
    if (!seen.insert(edge_key(u, v)).second)
      throw ParseError(ParseError::Kind::duplicate_edge, lineno, a + " " + b);
    edges.push_back({u, v});
  }
  int n = static_cast<int>(table.labels.size());
  return Instance(n, std::move(edges), {}, capacity, std::move(table.labels));
}

Instance apply_zero_injection_list(const Instance& inst, const std::string& text) {
  std::unordered_map<std::string, int> ids;
  for (int v = 0; v < inst.vertex_count(); ++v) ids.emplace(inst.label(v), v);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<int> zi;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string label;
    while (ls >> label) {
      if (label == "c" || label[0] == '#') break;
      auto it = ids.find(label);
      if (it == ids.end()) throw ParseError(ParseError::Kind::unknown_label, lineno, label);
      zi.push_back(it->second);
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < inst.vertex_count(); ++u)
    for (int v : inst.neighbors(u))
      if (u < v) edges.push_back({u, v});
  std::vector<std::string> labels;
  for (int v = 0; v < inst.vertex_count(); ++v) labels.push_back(inst.label(v));
  Instance out(inst.vertex_count(), std::move(edges), std::move(zi), inst.capacity(), std::move(labels));
  out.set_name(inst.name());
  return out;
}

std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  out << "p cpds " << inst.vertex_count() << " " << inst.edge_count() << "\n";
  bool any_zi = false;
  for (int v = 0; v < inst.vertex_count(); ++v) {
    if (inst.is_zero_injection(v)) {
      out << (any_zi ? " " : "z ") << inst.label(v);
      any_zi = true;
    }
  }
  if (any_zi) out << "\n";
  for (int u = 0; u < inst.vertex_count(); ++u)
    for (int v : inst.neighbors(u))
      if (u < v) out << "e " << inst.label(u) << " " << inst.label(v) << "\n";
  return out.str();
}

ComponentSplit connected_components(const Instance& inst) {
  const int n = inst.vertex_count();
  ComponentSplit split;
  split.to_component.assign(n, {-1, -1});
  std::vector<int> stack;
  for (int root = 0; root < n; ++root) {
    if (split.to_component[root].first >= 0) continue;
    int comp = static_cast<int>(split.components.size());
    std::vector<int> members;
    stack.push_back(root);
    split.to_component[root] = {comp, 0};
    members.push_back(root);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : inst.neighbors(u)) {
        if (split.to_component[v].first < 0) {
          split.to_component[v] = {comp, static_cast<int>(members.size())};
          members.push_back(v);
          stack.push_back(v);
        }
      }
    }
    std::vector<std::pair<int, int>> edges;
    std::vector<int> zi;
    std::vector<std::string> labels;
    for (int i = 0; i < static_cast<int>(members.size()); ++i) {
      int orig = members[i];
      labels.push_back(inst.label(orig));
      if (inst.is_zero_injection(orig)) zi.push_back(i);
      for (int w : inst.neighbors(orig)) {
        int j = split.to_component[w].second;
        if (i < j) edges.push_back({i, j});
      }
    }
    Instance sub(static_cast<int>(members.size()), std::move(edges), std::move(zi),
                 inst.capacity(), std::move(labels));
    sub.set_name(inst.name().empty() ? ("component" + std::to_string(comp))
                                     : inst.name() + "#" + std::to_string(comp));
    split.components.push_back(std::move(sub));
    split.to_original.push_back(std::move(members));
  }
  return split;
}

Instance generate_grid(int rows, int cols, double diagonal_probability,
                       const std::string& zi_mode, std::uint64_t seed, int capacity) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("grid dimensions must be positive");
  const int n = rows * cols;
  auto id = [cols](int r, int c) { return r * cols + c; };
  std::vector<std::pair<int, int>> edges;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c)});
      if (r + 1 < rows && c + 1 < cols && diagonal_probability > 0 &&
          coin(rng) < diagonal_probability)
        edges.push_back({id(r, c), id(r + 1, c + 1)});
    }
  }
  std::vector<int> zi;
  if (zi_mode == "all") {
    for (int v = 0; v < n; ++v) zi.push_back(v);
  } else if (zi_mode == "half") {
    for (int v = 0; v < n; ++v)
      if (coin(rng) < 0.5) zi.push_back(v);
  } else if (zi_mode != "none") {
    throw std::invalid_argument("zi_mode must be all, none or half");
  }
  Instance out(n, std::move(edges), std::move(zi), capacity);
  out.set_name("grid" + std::to_string(rows) + "x" + std::to_string(cols));
  return out;
}

Instance generate_random_connected(int n, int extra_edges, const std::string& zi_mode,
                                   std::uint64_t seed, int capacity) {
  if (n <= 0) throw std::invalid_argument("n must be positive");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<int, int>> edges;
  std::unordered_set<std::uint64_t> seen;
  for (int v = 1; v < n; ++v) {
    int u = static_cast<int>(rng() % v);
    edges.push_back({u, v});
    seen.insert(edge_key(u, v));
  }
  const std::uint64_t max_edges = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  int budget = extra_edges;
  int attempts = 0;
  while (budget > 0 && seen.size() < max_edges && attempts < 50 * extra_edges + 1000) {
    ++attempts;
    int u = static_cast<int>(rng() % n);
    int v = static_cast<int>(rng() % n);
    if (u == v) continue;
    if (!seen.insert(edge_key(u, v)).second) continue;
    edges.push_back({u, v});
    --budget;
  }
  std::vector<int> zi;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (zi_mode == "all") {
    for (int v = 0; v < n; ++v) zi.push_back(v);
  } else if (zi_mode == "half") {
    for (int v = 0; v < n; ++v)
      if (coin(rng) < 0.5) zi.push_back(v);
  } else if (zi_mode != "none") {
    throw std::invalid_argument("zi_mode must be all, none or half");
  }
  Instance out(n, std::move(edges), std::move(zi), capacity);
  out.set_name("rand" + std::to_string(n) + "s" + std::to_string(seed));
  return out;
}

}  // namespace cpds
