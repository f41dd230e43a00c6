#pragma once

// Colored-graph text format:
//   p rcg <n> <r>
//   e <u> <v> <c>      0 <= u < v < n, 1 <= c <= r
// Lines starting with '#' are comments. Uncolored graphs use r = 0 and
// edge lines "e <u> <v>".

#include "rpg/coloring.hpp"
#include "rpg/graph.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace rpg {

struct ColoredGraph {
  Graph graph;
  std::optional<EdgeColoring> coloring; // empty when r = 0
};

auto write_colored_graph(std::ostream & out, const Graph & g, const EdgeColoring * coloring) -> void;

/// Throws FormatError with the offending line number.
auto read_colored_graph(std::istream & in) -> ColoredGraph;

auto load_colored_graph(const std::filesystem::path & path) -> ColoredGraph;

} // namespace rpg
