#include "rpg/coloring.hpp"

#include "rpg/errors.hpp"
#include "rpg/rng.hpp"

#include <algorithm>

namespace rpg {

EdgeColoring::EdgeColoring(int n, int r)
    : _n(n), _r(r), _colors(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {
  if (r < 1)
    throw ParameterError("need at least one color");
  if (r > max_colors)
    throw CapacityError("at most " + std::to_string(max_colors) + " colors are supported");
}

auto EdgeColoring::assign(Vertex u, Vertex v, Color c) -> void {
  if (c < 1 || c > _r)
    throw ParameterError("color " + std::to_string(c) + " outside 1.." + std::to_string(_r));
  auto n = static_cast<std::size_t>(_n);
  _colors[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(c);
  _colors[static_cast<std::size_t>(v) * n + static_cast<std::size_t>(u)] = static_cast<std::uint8_t>(c);
}

auto EdgeColoring::valid_for(const Graph & g) const -> bool {
  if (g.n() != _n)
    return false;
  for (Vertex u = 0; u < _n; ++u)
    for (Vertex v = 0; v < _n; ++v) {
      Color c = color(u, v);
      if (g.has_edge(u, v) != (c != 0) || c > _r || c != color(v, u))
        return false;
    }
  return true;
}

auto color_uniform(const Graph & g, int r, std::uint64_t seed) -> EdgeColoring {
  if (r < 1)
    throw ParameterError("need at least one color");
  auto stream = derive_seed(seed, {0x636f6c});
  return EdgeColoring(g, r, [&](Vertex u, Vertex v) {
    return static_cast<Color>(1 + keyed_below(stream, static_cast<std::uint64_t>(u),
                                              static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(r)));
  });
}

auto refinement_merge_map(int r, int r_top) -> std::vector<Color> {
  if (r < 1 || r_top < r)
    throw ParameterError("refinement needs 1 <= r <= r_top");
  std::vector<Color> target(static_cast<std::size_t>(r_top) + 1);
  std::vector<int> mass(static_cast<std::size_t>(r_top) + 1, 1);
  for (Color c = 1; c <= r_top; ++c)
    target[static_cast<std::size_t>(c)] = c;

  for (Color top = r_top; top > r; --top) {
    Color lightest = 1;
    for (Color c = 2; c < top; ++c)
      if (mass[static_cast<std::size_t>(c)] < mass[static_cast<std::size_t>(lightest)])
        lightest = c;
    mass[static_cast<std::size_t>(lightest)] += mass[static_cast<std::size_t>(top)];
    for (auto & t : target)
      if (t == top)
        t = lightest;
  }
  return target;
}

auto color_refinement_chain(const Graph & g, int r, int r_top, std::uint64_t seed) -> EdgeColoring {
  auto map = refinement_merge_map(r, r_top);
  auto top = color_uniform(g, r_top, seed);
  return EdgeColoring(g, r, [&](Vertex u, Vertex v) { return map[static_cast<std::size_t>(top.color(u, v))]; });
}

} // namespace rpg
