#pragma once

#include "rpg/bitset.hpp"
#include "rpg/coloring.hpp"
#include "rpg/graph.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace rpg {

using Path = std::vector<Vertex>;

/// Set of colors from 1..64, bit c-1 standing for color c.
struct ColorMask {
  std::uint64_t bits = 0;

  auto contains(Color c) const -> bool { return (bits >> (c - 1)) & 1U; }
  auto with(Color c) const -> ColorMask { return {bits | (std::uint64_t{1} << (c - 1))}; }
  auto without(Color c) const -> ColorMask { return {bits & ~(std::uint64_t{1} << (c - 1))}; }
  auto count() const -> int { return std::popcount(bits); }

  friend auto operator<=>(const ColorMask &, const ColorMask &) = default;
};

/**
 * Per-color adjacency rows: row(c, x) holds the neighbors y of x with
 * color(x, y) == c. Built once per colored graph and shared by the kernels.
 */
class ColoredAdjacency {
public:
  ColoredAdjacency(const Graph & g, const EdgeColoring & col);

  auto n() const -> int { return _n; }
  auto r() const -> int { return _r; }
  auto row(Color c, Vertex x) const -> const Bitset & {
    return _rows[static_cast<std::size_t>(c - 1) * static_cast<std::size_t>(_n) + static_cast<std::size_t>(x)];
  }
  auto graph() const -> const Graph & { return *_graph; }
  auto coloring() const -> const EdgeColoring & { return *_coloring; }

private:
  const Graph * _graph;
  const EdgeColoring * _coloring;
  int _n;
  int _r;
  std::vector<Bitset> _rows;
};

/**
 * Single-source dynamic program over (vertex, color set) states. Layer l
 * holds, for every color set M with |M| = l, the vertices w such that some
 * rainbow walk from the source to w uses exactly the colors M. Removing a
 * closed subwalk from a rainbow walk leaves a rainbow walk, so the vertices
 * reached by walks and by paths coincide.
 */
class RainbowSearch {
public:
  RainbowSearch(const ColoredAdjacency & adj, Vertex source, int max_length);

  auto source() const -> Vertex { return _source; }
  auto reachable() const -> const Bitset & { return _reached; }

  /// Rainbow path from the source to v using the fewest edges (smallest
  /// color mask on ties), or nullopt. Predecessors are chosen as the
  /// smallest vertex whose state leads into the current one.
  auto path_to(Vertex v) const -> std::optional<Path>;

private:
  const ColoredAdjacency * _adj;
  Vertex _source;
  std::vector<std::map<ColorMask, Bitset>> _layers;
  Bitset _reached;
};

/// Validates vertex range and distinctness (throws ParameterError); true iff
/// consecutive vertices are adjacent and all edge colors differ.
auto is_rainbow_path(const Graph & g, const EdgeColoring & col, std::span<const Vertex> path) -> bool;

auto rainbow_reachable(const Graph & g, const EdgeColoring & col, Vertex u) -> Bitset;

struct RainbowReport {
  bool connected = false;
  std::optional<std::map<Edge, Path>> witness_paths;
  std::optional<Edge> failing_pair; // lexicographically first
};

/**
 * Exact rainbow connectivity. The reachability closure runs the same
 * (vertex, color set) program for all sources at once, with source sets as
 * bitsets, and stops as soon as every pair is covered.
 */
auto is_rainbow_connected(const Graph & g, const EdgeColoring & col, bool want_witnesses = false)
    -> RainbowReport;

/// Rainbow u-v path with at most max_length edges. Requires max_length <= r.
auto bounded_rainbow_path(const Graph & g, const EdgeColoring & col, Vertex u, Vertex v, int max_length)
    -> std::optional<Path>;

inline constexpr int oracle_max_vertices = 12;

/// Exhaustive simple-path enumeration from u (n <= 12).
auto oracle_rainbow_reachable(const Graph & g, const EdgeColoring & col, Vertex u) -> Bitset;

/// Ground truth by exhaustive simple-path enumeration (n <= 12).
auto oracle_rainbow_connected(const Graph & g, const EdgeColoring & col) -> bool;

} // namespace rpg
