#pragma once

#include "rpg/bitset.hpp"
#include "rpg/delta.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rpg {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/**
 * Undirected simple graph on vertices 0..n-1 with one adjacency bitset per
 * vertex. Immutable once built; construct through GraphBuilder.
 */
class Graph {
public:
  Graph() = default;

  auto n() const -> int { return static_cast<int>(_rows.size()); }
  auto edge_count() const -> std::int64_t { return _edge_count; }
  auto neighbors(Vertex v) const -> const Bitset & { return _rows[static_cast<std::size_t>(v)]; }
  auto degree(Vertex v) const -> int { return neighbors(v).count(); }
  auto has_edge(Vertex u, Vertex v) const -> bool { return neighbors(u).test(v); }

  /// All edges (u, v) with u < v in lexicographic order.
  auto edges() const -> std::vector<Edge>;

  friend auto operator==(const Graph &, const Graph &) -> bool = default;

private:
  friend class GraphBuilder;

  std::vector<Bitset> _rows;
  std::int64_t _edge_count = 0;
};

class GraphBuilder {
public:
  explicit GraphBuilder(int n);
  explicit GraphBuilder(const Graph & base);

  auto n() const -> int { return static_cast<int>(_graph._rows.size()); }
  auto has_edge(Vertex u, Vertex v) const -> bool { return _graph.has_edge(u, v); }
  auto degree(Vertex v) const -> int { return _graph.degree(v); }
  auto neighbors(Vertex v) const -> const Bitset & { return _graph.neighbors(v); }
  auto edge_count() const -> std::int64_t { return _graph._edge_count; }

  /// Adds {u, v}; returns false if it was already present. Rejects loops.
  auto add_edge(Vertex u, Vertex v) -> bool;

  auto build() && -> Graph { return std::move(_graph); }

private:
  Graph _graph;
};

auto min_degree(const Graph & g) -> int;

/// Full scan of the structural invariants (symmetry, no loops, edge count).
auto check_invariants(const Graph & g) -> bool;

auto complete_graph(int n) -> Graph;
auto path_graph(int n) -> Graph;
auto cycle_graph(int n) -> Graph;

enum class HostKind { complete, two_cliques, blowup, random_mindeg };

auto host_kind_name(HostKind kind) -> std::string_view;
auto parse_host_kind(std::string_view name) -> HostKind;

/**
 * Dense host with minimum degree at least ceil(delta * n).
 *
 * two_cliques is exactly two disjoint cliques on the first ceil(n/2) and
 * last floor(n/2) vertices. It is always disconnected, so its minimum degree
 * floor(n/2) - 1 can fall one short of ceil(delta * n) at delta = 1/2; the
 * generator accepts delta whenever ceil(delta * n) <= floor(n/2).
 */
auto build_host(HostKind kind, int n, Delta delta, std::uint64_t seed) -> Graph;

/// Minimum degree build_host guarantees for the given parameters.
auto guaranteed_min_degree(HostKind kind, int n, Delta delta) -> int;

enum class ReplacementMode { weak, strict };

auto replacement_mode_name(ReplacementMode mode) -> std::string_view;
auto parse_replacement_mode(std::string_view name) -> ReplacementMode;

/**
 * Adds m random edges to h.
 *
 * weak: m pairs drawn uniformly with replacement from all C(n,2) pairs;
 * pairs already present are absorbed. strict: m pairs drawn uniformly without
 * replacement from the non-edges of h.
 *
 * Both modes consume the seed stream one pair at a time, so for a fixed seed
 * the edge set for m is contained in the edge set for any m' > m.
 */
auto perturb(const Graph & h, std::int64_t m, ReplacementMode mode, std::uint64_t seed) -> Graph;

} // namespace rpg
