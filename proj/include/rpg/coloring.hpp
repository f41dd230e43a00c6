#pragma once

#include "rpg/graph.hpp"

#include <cstdint>
#include <vector>

namespace rpg {

using Color = int;

/// Maximum number of colors the bitmask kernels support.
inline constexpr int max_colors = 64;

/**
 * Edge coloring of a specific graph: every edge of the graph carries a color
 * in 1..r and non-edges carry none. Stored as a dense symmetric matrix, with
 * 0 marking "no edge".
 */
class EdgeColoring {
public:
  EdgeColoring() = default;

  /// Every edge of g gets color_of(u, v) (called with u < v).
  template <typename ColorOf>
  EdgeColoring(const Graph & g, int r, ColorOf && color_of) : EdgeColoring(g.n(), r) {
    for (auto [u, v] : g.edges())
      assign(u, v, color_of(u, v));
  }

  auto r() const -> int { return _r; }
  auto n() const -> int { return _n; }

  /// Color of edge {u, v}, or 0 if it is not an edge.
  auto color(Vertex u, Vertex v) const -> Color {
    return _colors[static_cast<std::size_t>(u) * static_cast<std::size_t>(_n) + static_cast<std::size_t>(v)];
  }

  /// Domain equals E(g) and every value lies in 1..r.
  auto valid_for(const Graph & g) const -> bool;

  friend auto operator==(const EdgeColoring &, const EdgeColoring &) -> bool = default;

private:
  EdgeColoring(int n, int r);
  auto assign(Vertex u, Vertex v, Color c) -> void;

  int _n = 0;
  int _r = 0;
  std::vector<std::uint8_t> _colors;
};

/// Independent uniform colors from 1..r. Each edge's color depends only on
/// (seed, u, v), so colorings of nested graphs agree on shared edges.
auto color_uniform(const Graph & g, int r, std::uint64_t seed) -> EdgeColoring;

/**
 * Coupled coloring for monotonicity in r. A uniform coloring with r_top
 * colors is drawn as in color_uniform, then colors r_top, r_top-1, ..., r+1
 * are merged one at a time into the currently lightest lower class (ties to
 * the smallest color). The result for r is therefore a merge of the result
 * for every r' in (r, r_top]. Only the r_top level is exactly uniform.
 */
auto color_refinement_chain(const Graph & g, int r, int r_top, std::uint64_t seed) -> EdgeColoring;

/// Merge map used by color_refinement_chain: entry c (1..r_top) is the color
/// that c becomes at level r.
auto refinement_merge_map(int r, int r_top) -> std::vector<Color>;

} // namespace rpg
