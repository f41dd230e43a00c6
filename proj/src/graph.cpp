#include "rpg/graph.hpp"

#include "rpg/errors.hpp"
#include "rpg/rng.hpp"

#include <algorithm>
#include <limits>

namespace rpg {

auto Graph::edges() const -> std::vector<Edge> {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(_edge_count));
  for (Vertex u = 0; u < n(); ++u)
    for (int v = neighbors(u).find_next(u + 1); v >= 0; v = neighbors(u).find_next(v + 1))
      out.emplace_back(u, v);
  return out;
}

GraphBuilder::GraphBuilder(int n) {
  if (n < 1)
    throw ParameterError("graph needs at least one vertex");
  _graph._rows.assign(static_cast<std::size_t>(n), Bitset(n));
}

GraphBuilder::GraphBuilder(const Graph & base) : _graph(base) {}

auto GraphBuilder::add_edge(Vertex u, Vertex v) -> bool {
  if (u == v)
    throw ParameterError("self-loop " + std::to_string(u));
  if (u < 0 || v < 0 || u >= n() || v >= n())
    throw ParameterError("edge endpoint out of range");
  auto & ru = _graph._rows[static_cast<std::size_t>(u)];
  if (ru.test(v))
    return false;
  ru.set(v);
  _graph._rows[static_cast<std::size_t>(v)].set(u);
  ++_graph._edge_count;
  return true;
}

auto min_degree(const Graph & g) -> int {
  int best = std::numeric_limits<int>::max();
  for (Vertex v = 0; v < g.n(); ++v)
    best = std::min(best, g.degree(v));
  return best;
}

auto check_invariants(const Graph & g) -> bool {
  std::int64_t degree_sum = 0;
  for (Vertex u = 0; u < g.n(); ++u) {
    if (g.has_edge(u, u))
      return false;
    bool symmetric = true;
    g.neighbors(u).for_each([&](Vertex v) { symmetric = symmetric && g.has_edge(v, u); });
    if (!symmetric)
      return false;
    degree_sum += g.degree(u);
  }
  return degree_sum == 2 * g.edge_count();
}

auto complete_graph(int n) -> Graph {
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      b.add_edge(u, v);
  return std::move(b).build();
}

auto path_graph(int n) -> Graph {
  GraphBuilder b(n);
  for (Vertex u = 0; u + 1 < n; ++u)
    b.add_edge(u, u + 1);
  return std::move(b).build();
}

auto cycle_graph(int n) -> Graph {
  if (n < 3)
    throw ParameterError("cycle needs at least 3 vertices");
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u)
    b.add_edge(u, (u + 1) % n);
  return std::move(b).build();
}

auto host_kind_name(HostKind kind) -> std::string_view {
  switch (kind) {
  case HostKind::complete: return "complete";
  case HostKind::two_cliques: return "two_cliques";
  case HostKind::blowup: return "blowup";
  case HostKind::random_mindeg: return "random_mindeg";
  }
  return "?";
}

auto parse_host_kind(std::string_view name) -> HostKind {
  for (auto kind : {HostKind::complete, HostKind::two_cliques, HostKind::blowup, HostKind::random_mindeg})
    if (host_kind_name(kind) == name)
      return kind;
  throw ParameterError("unknown host kind '" + std::string(name) + "'");
}

auto replacement_mode_name(ReplacementMode mode) -> std::string_view {
  return mode == ReplacementMode::weak ? "weak" : "strict";
}

auto parse_replacement_mode(std::string_view name) -> ReplacementMode {
  if (name == "weak")
    return ReplacementMode::weak;
  if (name == "strict")
    return ReplacementMode::strict;
  throw ParameterError("unknown replacement mode '" + std::string(name) + "'");
}

auto guaranteed_min_degree(HostKind kind, int n, Delta delta) -> int {
  int target = delta.min_degree_for(n);
  if (kind == HostKind::two_cliques)
    return std::min(target, n / 2 - 1);
  return target;
}

namespace {

auto build_two_cliques(int n) -> Graph {
  GraphBuilder b(n);
  int split = (n + 1) / 2;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if ((u < split) == (v < split))
        b.add_edge(u, v);
  return std::move(b).build();
}

// Complete multipartite graph; every part has at most n - target vertices,
// so every vertex sees at least target others.
auto build_blowup(int n, int target) -> Graph {
  int part = n - target;
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (u / part != v / part)
        b.add_edge(u, v);
  return std::move(b).build();
}

auto build_random_mindeg(int n, Delta delta, int target, std::uint64_t seed) -> Graph {
  Rng rng(derive_seed(seed, {0x686f7374}));
  GraphBuilder b(n);
  auto p_num = static_cast<std::uint64_t>(delta.num());
  auto p_den = static_cast<std::uint64_t>(delta.den());
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.chance(p_num, p_den))
        b.add_edge(u, v);

  // Greedy repair: connect each deficient vertex to a random non-neighbor,
  // preferring partners that are themselves deficient.
  std::vector<Vertex> deficient, others;
  for (Vertex v = 0; v < n; ++v) {
    while (b.degree(v) < target) {
      deficient.clear();
      others.clear();
      for (Vertex w = 0; w < n; ++w) {
        if (w == v || b.has_edge(v, w))
          continue;
        (b.degree(w) < target ? deficient : others).push_back(w);
      }
      const auto & pool = deficient.empty() ? others : deficient;
      b.add_edge(v, pool[rng.below(pool.size())]);
    }
  }
  return std::move(b).build();
}

} // namespace

auto build_host(HostKind kind, int n, Delta delta, std::uint64_t seed) -> Graph {
  if (n < 3)
    throw ParameterError("host needs n >= 3");
  if (delta.num() * n >= (n - 1) * delta.den())
    throw ParameterError("delta * n must be below n - 1");
  int target = delta.min_degree_for(n);

  switch (kind) {
  case HostKind::complete:
    return complete_graph(n);
  case HostKind::two_cliques:
    if (target > n / 2)
      throw ParameterError("two_cliques needs ceil(delta * n) <= floor(n / 2)");
    return build_two_cliques(n);
  case HostKind::blowup:
    return build_blowup(n, target);
  case HostKind::random_mindeg:
    return build_random_mindeg(n, delta, target, seed);
  }
  throw ParameterError("unknown host kind");
}

namespace {

auto pair_count(std::int64_t n) -> std::int64_t { return n * (n - 1) / 2; }

auto draw_pair(Rng & rng, int n) -> Edge {
  auto u = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
  auto v = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n - 1)));
  if (v >= u)
    ++v;
  return {std::min(u, v), std::max(u, v)};
}

} // namespace

auto perturb(const Graph & h, std::int64_t m, ReplacementMode mode, std::uint64_t seed) -> Graph {
  if (m < 0)
    throw ParameterError("m must be non-negative");
  const int n = h.n();
  const std::int64_t free_pairs = pair_count(n) - h.edge_count();
  if (mode == ReplacementMode::strict && m > free_pairs)
    throw ParameterError("strict perturbation needs m <= C(n,2) - |E(H)| = " + std::to_string(free_pairs));

  GraphBuilder b(h);
  if (m == 0)
    return std::move(b).build();
  Rng rng(derive_seed(seed, {0x70657274}));

  if (mode == ReplacementMode::weak) {
    for (std::int64_t i = 0; i < m; ++i) {
      auto [u, v] = draw_pair(rng, n);
      b.add_edge(u, v);
    }
    return std::move(b).build();
  }

  // Strict mode. Rejection sampling is a sequential uniform draw without
  // replacement; when non-edges are scarce, fall back to a partial
  // Fisher-Yates over the explicit non-edge list. The branch depends on h
  // only, which keeps the nesting in m intact.
  if (free_pairs * 64 >= pair_count(n)) {
    std::int64_t added = 0;
    while (added < m) {
      auto [u, v] = draw_pair(rng, n);
      if (b.add_edge(u, v))
        ++added;
    }
  } else {
    std::vector<Edge> missing;
    missing.reserve(static_cast<std::size_t>(free_pairs));
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (!h.has_edge(u, v))
          missing.emplace_back(u, v);
    for (std::int64_t i = 0; i < m; ++i) {
      auto j = i + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(free_pairs - i)));
      std::swap(missing[static_cast<std::size_t>(i)], missing[static_cast<std::size_t>(j)]);
      b.add_edge(missing[static_cast<std::size_t>(i)].first, missing[static_cast<std::size_t>(i)].second);
    }
  }
  return std::move(b).build();
}

} // namespace rpg
