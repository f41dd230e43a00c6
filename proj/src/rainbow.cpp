#include "rpg/rainbow.hpp"

#include "rpg/errors.hpp"

#include <algorithm>

namespace rpg {

ColoredAdjacency::ColoredAdjacency(const Graph & g, const EdgeColoring & col)
    : _graph(&g), _coloring(&col), _n(g.n()), _r(col.r()) {
  if (col.n() != g.n())
    throw ParameterError("coloring was built for a different graph");
  if (_r > max_colors)
    throw CapacityError("at most " + std::to_string(max_colors) + " colors are supported");
  _rows.assign(static_cast<std::size_t>(_r) * static_cast<std::size_t>(_n), Bitset(_n));
  for (auto [u, v] : g.edges()) {
    Color c = col.color(u, v);
    _rows[static_cast<std::size_t>(c - 1) * static_cast<std::size_t>(_n) + static_cast<std::size_t>(u)].set(v);
    _rows[static_cast<std::size_t>(c - 1) * static_cast<std::size_t>(_n) + static_cast<std::size_t>(v)].set(u);
  }
}

RainbowSearch::RainbowSearch(const ColoredAdjacency & adj, Vertex source, int max_length)
    : _adj(&adj), _source(source), _reached(adj.n()) {
  if (source < 0 || source >= adj.n())
    throw ParameterError("source vertex out of range");
  Bitset start(adj.n());
  start.set(source);
  _reached.set(source);
  _layers.push_back({{ColorMask{}, start}});

  const int r = adj.r();
  for (int length = 0; length < max_length; ++length) {
    std::map<ColorMask, Bitset> next;
    for (const auto & [mask, frontier] : _layers.back()) {
      for (Color c = 1; c <= r; ++c) {
        if (mask.contains(c))
          continue;
        Bitset step(adj.n());
        frontier.for_each([&](Vertex x) { step |= adj.row(c, x); });
        if (step.none())
          continue;
        auto [it, inserted] = next.try_emplace(mask.with(c), std::move(step));
        if (!inserted)
          it->second |= step;
      }
    }
    if (next.empty())
      break;
    for (const auto & [mask, vertices] : next)
      _reached |= vertices;
    _layers.push_back(std::move(next));
  }
}

auto RainbowSearch::path_to(Vertex v) const -> std::optional<Path> {
  for (const auto & layer : _layers) {
    for (const auto & [end_mask, vertices] : layer) {
      if (!vertices.test(v))
        continue;

      Path reversed{v};
      Vertex w = v;
      ColorMask mask = end_mask;
      const auto & col = _adj->coloring();
      while (mask.count() > 0) {
        const auto & previous = _layers[static_cast<std::size_t>(mask.count() - 1)];
        Vertex pred = -1;
        for (int x = _adj->graph().neighbors(w).find_first(); x >= 0;
             x = _adj->graph().neighbors(w).find_next(x + 1)) {
          Color c = col.color(x, w);
          if (!mask.contains(c))
            continue;
          auto it = previous.find(mask.without(c));
          if (it != previous.end() && it->second.test(x)) {
            pred = x;
            mask = mask.without(c);
            break;
          }
        }
        reversed.push_back(pred);
        w = pred;
      }
      std::reverse(reversed.begin(), reversed.end());
      return reversed;
    }
  }
  return std::nullopt;
}

auto is_rainbow_path(const Graph & g, const EdgeColoring & col, std::span<const Vertex> path) -> bool {
  if (path.empty())
    throw ParameterError("empty path");
  Bitset seen(g.n());
  for (Vertex v : path) {
    if (v < 0 || v >= g.n())
      throw ParameterError("path vertex " + std::to_string(v) + " out of range");
    if (seen.test(v))
      throw ParameterError("path repeats vertex " + std::to_string(v));
    seen.set(v);
  }
  ColorMask used;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!g.has_edge(path[i], path[i + 1]))
      return false;
    Color c = col.color(path[i], path[i + 1]);
    if (used.contains(c))
      return false;
    used = used.with(c);
  }
  return true;
}

namespace {

auto longest_rainbow_path(const Graph & g, const EdgeColoring & col) -> int {
  return std::min(col.r(), g.n() - 1);
}

} // namespace

auto rainbow_reachable(const Graph & g, const EdgeColoring & col, Vertex u) -> Bitset {
  ColoredAdjacency adj(g, col);
  return RainbowSearch(adj, u, longest_rainbow_path(g, col)).reachable();
}

auto is_rainbow_connected(const Graph & g, const EdgeColoring & col, bool want_witnesses) -> RainbowReport {
  ColoredAdjacency adj(g, col);
  const int n = g.n();
  const int r = col.r();

  // reached[w] = sources with a rainbow path to w (= targets of w, by symmetry).
  std::vector<Bitset> reached(static_cast<std::size_t>(n), Bitset(n));
  std::vector<Bitset> identity(static_cast<std::size_t>(n), Bitset(n));
  for (Vertex w = 0; w < n; ++w) {
    reached[static_cast<std::size_t>(w)].set(w);
    identity[static_cast<std::size_t>(w)].set(w);
  }
  auto all_covered = [&] {
    return std::all_of(reached.begin(), reached.end(), [](const Bitset & b) { return b.all(); });
  };

  // Layer entries: color set M -> per-vertex set of sources reaching it with exactly M.
  std::map<ColorMask, std::vector<Bitset>> layer;
  layer.emplace(ColorMask{}, std::move(identity));
  const int max_length = longest_rainbow_path(g, col);
  for (int length = 0; length < max_length && !all_covered(); ++length) {
    std::map<ColorMask, std::vector<Bitset>> next;
    for (const auto & [mask, sources] : layer) {
      std::vector<std::vector<Bitset> *> target(static_cast<std::size_t>(r) + 1, nullptr);
      for (Vertex x = 0; x < n; ++x) {
        const auto & from = sources[static_cast<std::size_t>(x)];
        if (from.none())
          continue;
        for (Color c = 1; c <= r; ++c) {
          if (mask.contains(c))
            continue;
          const auto & row = adj.row(c, x);
          if (row.none())
            continue;
          auto & slot = target[static_cast<std::size_t>(c)];
          if (!slot) {
            auto [it, inserted] = next.try_emplace(mask.with(c));
            if (inserted)
              it->second.assign(static_cast<std::size_t>(n), Bitset(n));
            slot = &it->second;
          }
          row.for_each([&](Vertex y) { (*slot)[static_cast<std::size_t>(y)] |= from; });
        }
      }
    }
    if (next.empty())
      break;
    for (const auto & [mask, sources] : next)
      for (Vertex y = 0; y < n; ++y)
        reached[static_cast<std::size_t>(y)] |= sources[static_cast<std::size_t>(y)];
    layer = std::move(next);
  }

  RainbowReport report;
  report.connected = true;
  for (Vertex u = 0; u < n && report.connected; ++u) {
    const auto & row = reached[static_cast<std::size_t>(u)];
    for (Vertex v = u + 1; v < n; ++v) {
      if (!row.test(v)) {
        report.connected = false;
        report.failing_pair = Edge{u, v};
        break;
      }
    }
  }

  if (want_witnesses) {
    std::map<Edge, Path> witnesses;
    for (Vertex u = 0; u < n; ++u) {
      RainbowSearch search(adj, u, max_length);
      for (Vertex v = u + 1; v < n; ++v)
        if (auto path = search.path_to(v))
          witnesses.emplace(Edge{u, v}, std::move(*path));
    }
    report.witness_paths = std::move(witnesses);
  }
  return report;
}

auto bounded_rainbow_path(const Graph & g, const EdgeColoring & col, Vertex u, Vertex v, int max_length)
    -> std::optional<Path> {
  if (max_length < 0 || max_length > col.r())
    throw ParameterError("path length bound must lie in 0..r");
  if (v < 0 || v >= g.n())
    throw ParameterError("target vertex out of range");
  ColoredAdjacency adj(g, col);
  return RainbowSearch(adj, u, std::min(max_length, g.n() - 1)).path_to(v);
}

namespace {

void enumerate_paths(const Graph & g, const EdgeColoring & col, Vertex at, int depth_left, Bitset & on_path,
                     ColorMask used, Bitset & reached) {
  reached.set(at);
  if (depth_left == 0)
    return;
  g.neighbors(at).for_each([&](Vertex next) {
    Color c = col.color(at, next);
    if (on_path.test(next) || used.contains(c))
      return;
    on_path.set(next);
    enumerate_paths(g, col, next, depth_left - 1, on_path, used.with(c), reached);
    on_path.reset(next);
  });
}

auto check_oracle_size(const Graph & g) -> void {
  if (g.n() > oracle_max_vertices)
    throw CapacityError("exhaustive oracle supports at most " + std::to_string(oracle_max_vertices) + " vertices");
}

} // namespace

auto oracle_rainbow_reachable(const Graph & g, const EdgeColoring & col, Vertex u) -> Bitset {
  check_oracle_size(g);
  Bitset reached(g.n());
  Bitset on_path(g.n());
  on_path.set(u);
  enumerate_paths(g, col, u, longest_rainbow_path(g, col), on_path, ColorMask{}, reached);
  return reached;
}

auto oracle_rainbow_connected(const Graph & g, const EdgeColoring & col) -> bool {
  check_oracle_size(g);
  for (Vertex u = 0; u < g.n(); ++u) {
    auto reached = oracle_rainbow_reachable(g, col, u);
    for (Vertex v = u + 1; v < g.n(); ++v)
      if (!reached.test(v))
        return false;
  }
  return true;
}

} // namespace rpg
