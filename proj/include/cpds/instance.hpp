#ifndef CPDS_INSTANCE_HPP
#define CPDS_INSTANCE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cpds {

/// Ordered pair (u,v): rule (PR) fired at u to monitor v. Also used for the
/// capacity pairs of A_D.
struct Propagation {
  int from = -1;
  int to = -1;
  friend bool operator==(const Propagation&, const Propagation&) = default;
  friend auto operator<=>(const Propagation&, const Propagation&) = default;
};

/// Undirected graph with zero-injection flags and a global channel capacity.
/// Vertices are dense 0-based ids; labels are kept for I/O only.
class Instance {
public:
  Instance() = default;
  Instance(int n, std::vector<std::pair<int, int>> edges,
           std::vector<int> zero_injection_vertices, int capacity,
           std::vector<std::string> labels = {});

  [[nodiscard]] int vertex_count() const { return n_; }
  [[nodiscard]] int edge_count() const { return m_; }
  [[nodiscard]] int capacity() const { return capacity_; }
  [[nodiscard]] int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  [[nodiscard]] int max_degree() const;
  [[nodiscard]] const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  [[nodiscard]] bool is_zero_injection(int v) const { return zero_injection_[v] != 0; }
  [[nodiscard]] int zero_injection_count() const;
  [[nodiscard]] bool has_edge(int u, int v) const;

  [[nodiscard]] const std::string& label(int v) const { return labels_[v]; }
  [[nodiscard]] const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Same graph and zero-injection set with a different capacity.
  [[nodiscard]] Instance with_capacity(int k) const;

private:
  int n_ = 0;
  int m_ = 0;
  int capacity_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<char> zero_injection_;
  std::vector<std::string> labels_;
  std::string name_;
};

/// The index sets A_P = {(u,v): u in V_P, v in N(u)} and
/// A_D = {(u,v): deg(u) > k, v in N(u)}, with pair -> position lookups.
struct PropagationIndex {
  std::vector<Propagation> a_p;
  std::vector<Propagation> a_d;
  // position of (u,v) in a_p / a_d, or -1
  [[nodiscard]] int ap_position(int u, int v) const;
  [[nodiscard]] int ad_position(int u, int v) const;

  std::vector<std::vector<std::pair<int, int>>> ap_by_source;  // v, pos
  std::vector<std::vector<std::pair<int, int>>> ap_by_target;  // u, pos

private:
  friend PropagationIndex build_propagation_index(const Instance&);
  std::vector<std::vector<std::pair<int, int>>> ap_pos_;  // per source: (v, pos)
  std::vector<std::vector<std::pair<int, int>>> ad_pos_;
};

PropagationIndex build_propagation_index(const Instance& inst);

struct ParseError : std::runtime_error {
  enum class Kind {
    malformed_header,
    duplicate_edge,
    self_loop,
    unknown_label,
    negative_capacity,
    bad_line,
    vertex_overflow,
    edge_count_mismatch,
  };
  ParseError(Kind kind, int line, const std::string& what);
  Kind kind;
  int line;
};

/// Parse the `p cpds` line-oriented format. Capacity is not part of the file;
/// it defaults to 0 and is normally set afterwards from the CLI.
Instance parse_instance(const std::string& text, int capacity = 0);

/// Secondary importer: plain `u v` edge list, one edge per line.
Instance parse_edge_list(const std::string& text, int capacity = 0);

/// Zero-injection list file for the secondary importer: whitespace-separated
/// labels that must already exist in the instance.
Instance apply_zero_injection_list(const Instance& inst, const std::string& text);

/// Serialize back to the `p cpds` format.
std::string write_instance(const Instance& inst);

struct ComponentSplit {
  std::vector<Instance> components;
  // to_component[v] = (component index, vertex id inside the component)
  std::vector<std::pair<int, int>> to_component;
  // original vertex id per component vertex
  std::vector<std::vector<int>> to_original;
};

ComponentSplit connected_components(const Instance& inst);

/// rows x cols grid, optionally with random diagonal bracing.
/// zi_mode: "all", "none" or "half" (random half, seeded).
Instance generate_grid(int rows, int cols, double diagonal_probability,
                       const std::string& zi_mode, std::uint64_t seed,
                       int capacity = 0);

/// Random connected graph: random spanning tree plus `extra_edges` edges.
Instance generate_random_connected(int n, int extra_edges, const std::string& zi_mode,
                                   std::uint64_t seed, int capacity = 0);

}  // namespace cpds

#endif
