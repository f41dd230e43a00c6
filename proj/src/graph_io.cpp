#include "rpg/graph_io.hpp"

#include "rpg/errors.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace rpg {

auto write_colored_graph(std::ostream & out, const Graph & g, const EdgeColoring * coloring) -> void {
  out << "p rcg " << g.n() << ' ' << (coloring ? coloring->r() : 0) << '\n';
  for (auto [u, v] : g.edges()) {
    out << "e " << u << ' ' << v;
    if (coloring)
      out << ' ' << coloring->color(u, v);
    out << '\n';
  }
}

namespace {

auto split_tokens(const std::string & line) -> std::vector<std::string> {
  std::istringstream ss(line);
  std::vector<std::string> tokens;
  for (std::string t; ss >> t;)
    tokens.push_back(t);
  return tokens;
}

auto to_int(const std::string & token, int line) -> long long {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw FormatError(line, "expected an integer, got '" + token + "'");
  return v;
}

} // namespace

auto read_colored_graph(std::istream & in) -> ColoredGraph {
  std::optional<GraphBuilder> builder;
  int n = 0;
  int r = 0;
  std::map<Edge, Color> colors;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tokens = split_tokens(line);
    if (tokens.empty() || tokens[0].starts_with('#'))
      continue;

    if (tokens[0] == "p") {
      if (builder)
        throw FormatError(lineno, "duplicate problem line");
      if (tokens.size() != 4 || tokens[1] != "rcg")
        throw FormatError(lineno, "expected 'p rcg <n> <r>'");
      auto nn = to_int(tokens[2], lineno);
      auto rr = to_int(tokens[3], lineno);
      if (nn < 1 || nn > 1'000'000)
        throw FormatError(lineno, "vertex count out of range");
      if (rr < 0 || rr > max_colors)
        throw FormatError(lineno, "color count out of range (0.." + std::to_string(max_colors) + ")");
      n = static_cast<int>(nn);
      r = static_cast<int>(rr);
      builder.emplace(n);
    } else if (tokens[0] == "e") {
      if (!builder)
        throw FormatError(lineno, "edge before problem line");
      std::size_t expected = r == 0 ? 3 : 4;
      if (tokens.size() != expected)
        throw FormatError(lineno, r == 0 ? "expected 'e <u> <v>'" : "expected 'e <u> <v> <c>'");
      auto u = to_int(tokens[1], lineno);
      auto v = to_int(tokens[2], lineno);
      if (!(0 <= u && u < v && v < n))
        throw FormatError(lineno, "edge must satisfy 0 <= u < v < n");
      if (!builder->add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v)))
        throw FormatError(lineno, "duplicate edge");
      if (r > 0) {
        auto c = to_int(tokens[3], lineno);
        if (c < 1 || c > r)
          throw FormatError(lineno, "color must lie in 1..r");
        colors[{static_cast<Vertex>(u), static_cast<Vertex>(v)}] = static_cast<Color>(c);
      }
    } else {
      throw FormatError(lineno, "unknown line tag '" + tokens[0] + "'");
    }
  }
  if (!builder)
    throw FormatError(lineno, "missing problem line");

  ColoredGraph result{std::move(*builder).build(), std::nullopt};
  if (r > 0)
    result.coloring.emplace(result.graph, r, [&](Vertex u, Vertex v) { return colors.at({u, v}); });
  return result;
}

auto load_colored_graph(const std::filesystem::path & path) -> ColoredGraph {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path.string());
  return read_colored_graph(in);
}

} // namespace rpg
