#include "rpg/coloring.hpp"
#include "rpg/errors.hpp"
#include "rpg/graph.hpp"
#include "rpg/graph_io.hpp"
#include "rpg/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

using namespace rpg;

namespace {

auto two_k5() -> Graph { return build_host(HostKind::two_cliques, 10, Delta(2, 5), 1); }

// Degrees recomputed from the edge list, independent of the bitset popcounts.
auto degrees_from_edges(const Graph & g) -> std::vector<int> {
  std::vector<int> deg(static_cast<std::size_t>(g.n()), 0);
  for (auto [u, v] : g.edges()) {
    ++deg[static_cast<std::size_t>(u)];
    ++deg[static_cast<std::size_t>(v)];
  }
  return deg;
}

} // namespace

TEST_CASE("delta parsing is exact") {
  CHECK(Delta::parse("0.5") == Delta(1, 2));
  CHECK(Delta::parse(".35") == Delta(7, 20));
  CHECK(Delta::parse("1/3") == Delta(1, 3));
  CHECK(Delta::parse("0.7").min_degree_for(10) == 7);
  CHECK(Delta::parse("0.3").min_degree_for(50) == 15);
  CHECK(Delta::parse("0.35").to_string() == "0.35");
  CHECK(Delta(1, 3).to_string() == "1/3");
  CHECK_THROWS_AS(Delta::parse("1.5"), ParameterError);
  CHECK_THROWS_AS(Delta::parse("0"), ParameterError);
  CHECK_THROWS_AS(Delta::parse("abc"), ParameterError);
}

TEST_CASE("min_degree") {
  CHECK(min_degree(complete_graph(4)) == 3);
  GraphBuilder b(3);
  b.add_edge(0, 1);
  CHECK(min_degree(std::move(b).build()) == 0);
}

TEST_CASE("builder rejects loops and counts duplicates once") {
  GraphBuilder b(4);
  CHECK(b.add_edge(0, 1));
  CHECK_FALSE(b.add_edge(1, 0));
  CHECK_THROWS_AS(b.add_edge(2, 2), ParameterError);
  auto g = std::move(b).build();
  CHECK(g.edge_count() == 1);
  CHECK(check_invariants(g));
}

TEST_CASE("build_host examples") {
  SUBCASE("complete") {
    auto g = build_host(HostKind::complete, 4, Delta(1, 2), 99);
    CHECK(g == complete_graph(4));
    CHECK(min_degree(g) == 3);
  }
  SUBCASE("two disjoint K5") {
    auto g = two_k5();
    CHECK(g.edge_count() == 20);
    CHECK(min_degree(g) == 4);
    for (Vertex u = 0; u < 5; ++u)
      for (Vertex v = 5; v < 10; ++v)
        CHECK_FALSE(g.has_edge(u, v));
  }
  SUBCASE("random_mindeg n=50 delta=0.3") {
    auto g = build_host(HostKind::random_mindeg, 50, Delta::parse("0.3"), 7);
    auto deg = degrees_from_edges(g);
    CHECK(*std::min_element(deg.begin(), deg.end()) >= 15);
    CHECK(min_degree(g) >= 15);
  }
  SUBCASE("blowup is complete multipartite") {
    auto g = build_host(HostKind::blowup, 12, Delta::parse("0.6"), 0);
    // parts of size 12 - ceil(7.2) = 4
    CHECK(min_degree(g) == 8);
    CHECK_FALSE(g.has_edge(0, 3));
    CHECK(g.has_edge(3, 4));
  }
}

TEST_CASE("build_host errors") {
  CHECK_THROWS_AS(build_host(HostKind::complete, 4, Delta(3, 4), 0), ParameterError);
  CHECK_THROWS_AS(build_host(HostKind::complete, 2, Delta(1, 4), 0), ParameterError);
  CHECK_THROWS_AS(build_host(HostKind::two_cliques, 10, Delta::parse("0.6"), 0), ParameterError);
}

TEST_CASE("two_cliques at delta = 1/2 stays disconnected, one short of ceil(delta n)") {
  auto g = build_host(HostKind::two_cliques, 300, Delta(1, 2), 0);
  CHECK(min_degree(g) == 149);
  CHECK(guaranteed_min_degree(HostKind::two_cliques, 300, Delta(1, 2)) == 149);
  CHECK(g.edge_count() == 2 * (150 * 149 / 2));
}

TEST_CASE("property: every host kind meets its degree guarantee and structural invariants") {
  const std::vector<std::string> deltas{"0.1", "0.25", "0.3", "0.45", "0.5", "0.6", "0.8"};
  for (int n : {3, 7, 10, 31, 64, 65, 100}) {
    for (const auto & text : deltas) {
      auto delta = Delta::parse(text);
      for (auto kind : {HostKind::complete, HostKind::two_cliques, HostKind::blowup, HostKind::random_mindeg}) {
        if (delta.num() * n >= (n - 1) * delta.den())
          continue;
        if (kind == HostKind::two_cliques && delta.min_degree_for(n) > n / 2)
          continue;
        for (std::uint64_t seed : {1ULL, 2ULL}) {
          auto g = build_host(kind, n, delta, seed);
          CAPTURE(n);
          CAPTURE(text);
          CAPTURE(host_kind_name(kind));
          REQUIRE(check_invariants(g));
          CHECK(min_degree(g) >= guaranteed_min_degree(kind, n, delta));
          if (kind != HostKind::two_cliques || delta.min_degree_for(n) <= n / 2 - 1)
            CHECK(min_degree(g) >= delta.min_degree_for(n));
          CHECK(g == build_host(kind, n, delta, seed));
        }
      }
    }
  }
}

TEST_CASE("perturb examples") {
  auto k4 = complete_graph(4);
  CHECK(perturb(two_k5(), 0, ReplacementMode::weak, 5) == two_k5());
  CHECK(perturb(k4, 3, ReplacementMode::weak, 5) == k4);
  auto strict = perturb(two_k5(), 25, ReplacementMode::strict, 3);
  CHECK(strict.edge_count() == 45);
  // 25 cross pairs exist, so strict mode must add all of them.
  CHECK(strict == complete_graph(10));
  CHECK_THROWS_AS(perturb(two_k5(), 26, ReplacementMode::strict, 3), ParameterError);
  CHECK_THROWS_AS(perturb(k4, -1, ReplacementMode::weak, 3), ParameterError);
}

TEST_CASE("property: perturb is monotone, nested in m and reproducible") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto h = build_host(HostKind::random_mindeg, 40, Delta::parse("0.2"), seed);
    for (auto mode : {ReplacementMode::weak, ReplacementMode::strict}) {
      Graph previous = h;
      for (std::int64_t m : {0, 1, 5, 17, 60, 200}) {
        auto g = perturb(h, m, mode, seed * 7 + 1);
        REQUIRE(check_invariants(g));
        CHECK(g == perturb(h, m, mode, seed * 7 + 1));
        for (auto [u, v] : previous.edges())
          CHECK(g.has_edge(u, v));
        if (mode == ReplacementMode::strict)
          CHECK(g.edge_count() == h.edge_count() + m);
        else
          CHECK(g.edge_count() <= h.edge_count() + m);
        previous = g;
      }
    }
  }
}

TEST_CASE("strict perturb on a nearly complete host uses the explicit non-edge list") {
  auto base = complete_graph(30);
  GraphBuilder sparse_missing(30);
  for (auto [u, v] : base.edges())
    if (!(u == 0 && v < 4))
      sparse_missing.add_edge(u, v);
  auto h = std::move(sparse_missing).build();
  auto g = perturb(h, 2, ReplacementMode::strict, 4);
  CHECK(g.edge_count() == h.edge_count() + 2);
  CHECK(perturb(h, 3, ReplacementMode::strict, 4) == complete_graph(30));
}

TEST_CASE("color_uniform") {
  SUBCASE("one color") {
    auto g = complete_graph(6);
    auto col = color_uniform(g, 1, 3);
    for (auto [u, v] : g.edges())
      CHECK(col.color(u, v) == 1);
  }
  SUBCASE("triangle, five colors") {
    auto g = complete_graph(3);
    auto col = color_uniform(g, 5, 11);
    CHECK(col.valid_for(g));
    for (auto [u, v] : g.edges()) {
      CHECK(col.color(u, v) >= 1);
      CHECK(col.color(u, v) <= 5);
    }
  }
  SUBCASE("chi-square uniformity on K100") {
    auto g = complete_graph(100);
    auto col = color_uniform(g, 5, 2024);
    std::array<int, 5> histogram{};
    for (auto [u, v] : g.edges())
      ++histogram[static_cast<std::size_t>(col.color(u, v) - 1)];
    const double expected = 4950.0 / 5;
    double chi2 = 0;
    for (int count : histogram)
      chi2 += (count - expected) * (count - expected) / expected;
    // 0.999 quantile of chi-square with 4 degrees of freedom.
    CHECK(chi2 < 18.4668);
  }
  SUBCASE("errors") { CHECK_THROWS_AS(color_uniform(complete_graph(3), 0, 1), ParameterError); }
}

TEST_CASE("colors of shared edges agree across nested graphs") {
  auto h = build_host(HostKind::two_cliques, 20, Delta::parse("0.3"), 0);
  auto small = perturb(h, 5, ReplacementMode::weak, 9);
  auto large = perturb(h, 30, ReplacementMode::weak, 9);
  auto cs = color_uniform(small, 5, 77);
  auto cl = color_uniform(large, 5, 77);
  for (auto [u, v] : small.edges())
    CHECK(cs.color(u, v) == cl.color(u, v));
}

TEST_CASE("refinement chain merges colors") {
  auto map = refinement_merge_map(3, 5);
  // 5 -> 1, then 4 -> 2 (1 is heavier now)
  CHECK(map == std::vector<Color>{0, 1, 2, 3, 2, 1});
  auto g = complete_graph(25);
  auto top = color_refinement_chain(g, 5, 5, 8);
  CHECK(top == color_uniform(g, 5, 8));
  for (int r = 1; r < 5; ++r) {
    auto finer = color_refinement_chain(g, r + 1, 5, 8);
    auto coarser = color_refinement_chain(g, r, 5, 8);
    CHECK(coarser.valid_for(g));
    // Each finer class sits inside one coarser class.
    std::map<Color, Color> image;
    for (auto [u, v] : g.edges()) {
      auto [it, inserted] = image.emplace(finer.color(u, v), coarser.color(u, v));
      CHECK(it->second == coarser.color(u, v));
    }
  }
}

TEST_CASE("colored graph format") {
  auto g = two_k5();
  auto col = color_uniform(g, 5, 1);
  std::stringstream ss;
  write_colored_graph(ss, g, &col);
  auto text = ss.str();
  CHECK(text.starts_with("p rcg 10 5\ne 0 1 "));
  auto back = read_colored_graph(ss);
  CHECK(back.graph == g);
  REQUIRE(back.coloring);
  CHECK(*back.coloring == col);

  std::stringstream plain;
  write_colored_graph(plain, g, nullptr);
  auto uncolored = read_colored_graph(plain);
  CHECK(uncolored.graph == g);
  CHECK_FALSE(uncolored.coloring);
}

TEST_CASE("colored graph format errors carry line numbers") {
  auto line_of = [](const std::string & text) {
    std::istringstream in(text);
    try {
      read_colored_graph(in);
    } catch (const FormatError & e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("# hi\np rcg 3 2\ne 0 1 3\n") == 3);
  CHECK(line_of("p rcg 3 2\ne 1 0 1\n") == 2);
  CHECK(line_of("p rcg 3 2\ne 0 1 1\ne 0 1 2\n") == 3);
  CHECK(line_of("e 0 1 1\n") == 1);
  CHECK(line_of("p rcg 3 0\ne 0 1 1\n") == 2);
  CHECK(line_of("p rcg 3 2\nx\n") == 2);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(read_colored_graph(empty), FormatError);
}
