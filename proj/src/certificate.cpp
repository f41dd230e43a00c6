#include "rpg/certificate.hpp"

#include "rpg/errors.hpp"
#include "rpg/rng.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace rpg {

auto default_set_count(int n) -> int { return static_cast<int>(std::ceil(100.0 * std::log(static_cast<double>(n)))); }

auto default_set_size(Delta delta) -> int { return static_cast<int>(ceil_div(6 * delta.den(), delta.num())) + 1; }

auto sample_family(const Graph & g, Delta delta, std::uint64_t seed, SampleOverrides overrides) -> SampleFamily {
  const int n = g.n();
  if (n < 2)
    throw ParameterError("sampling needs n >= 2");
  SampleFamily family;
  family.t = overrides.t.value_or(default_set_count(n));
  family.k = overrides.k.value_or(default_set_size(delta));
  family.seed = seed;
  if (family.t < 1 || family.k < 1)
    throw ParameterError("t and k must be positive");
  if (family.k >= n)
    family.warning = "k = " + std::to_string(family.k) + " >= n = " + std::to_string(n) + "; S may cover V";

  Rng rng(derive_seed(seed, {0x73616d70}));
  family.covered = Bitset(n);
  family.sets.reserve(static_cast<std::size_t>(family.t));
  family.supports.reserve(static_cast<std::size_t>(family.t));
  for (int i = 0; i < family.t; ++i) {
    std::vector<Vertex> set(static_cast<std::size_t>(family.k));
    Bitset support(n);
    for (auto & v : set) {
      v = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
      support.set(v);
    }
    family.covered |= support;
    family.sets.push_back(std::move(set));
    family.supports.push_back(std::move(support));
  }
  return family;
}

namespace {

// Edge (a', b') with a' in N(a) \ S and b' in N(b) \ S, smallest a' first.
auto find_witness(const Graph & g, const Bitset & covered, Vertex a, Vertex b) -> std::optional<Edge> {
  Bitset near_a = g.neighbors(a);
  near_a.subtract(covered);
  Bitset near_b = g.neighbors(b);
  near_b.subtract(covered);
  if (near_a.none() || near_b.none())
    return std::nullopt;
  for (int ap = near_a.find_first(); ap >= 0; ap = near_a.find_next(ap + 1)) {
    if (!g.neighbors(ap).intersects(near_b))
      continue;
    return Edge{ap, (g.neighbors(ap) & near_b).find_first()};
  }
  return std::nullopt;
}

} // namespace

auto is_good(const Graph & g, const SampleFamily & family, int i) -> SetGoodness {
  if (i < 0 || i >= family.t)
    throw ParameterError("set index out of range");
  auto members = family.supports[static_cast<std::size_t>(i)].to_vector();
  SetGoodness result;
  result.good = true;
  for (std::size_t x = 0; x < members.size() && result.good; ++x) {
    for (std::size_t y = x + 1; y < members.size(); ++y) {
      auto witness = find_witness(g, family.covered, members[x], members[y]);
      if (!witness) {
        result.good = false;
        break;
      }
      result.witnesses.emplace(Edge{members[x], members[y]}, *witness);
    }
  }
  return result;
}

auto index_set(const Graph & g, const SampleFamily & family, Vertex u, Vertex v) -> std::vector<int> {
  std::vector<int> out;
  for (int i = 0; i < family.t; ++i) {
    const auto & support = family.supports[static_cast<std::size_t>(i)];
    if (support.intersects(g.neighbors(u)) && support.intersects(g.neighbors(v)))
      out.push_back(i);
  }
  return out;
}

auto diagnosis_name(PairDiagnosis d) -> std::string_view {
  return d == PairDiagnosis::no_index ? "no-index" : "no-good-path";
}

namespace {

auto distinct(std::initializer_list<Vertex> vs) -> bool {
  for (auto i = vs.begin(); i != vs.end(); ++i)
    for (auto j = std::next(i); j != vs.end(); ++j)
      if (*i == *j)
        return false;
  return true;
}

auto assemble_from_indices(const Graph & g, const EdgeColoring & col, const SampleFamily & family,
                           const std::vector<SetGoodness> & goodness, Vertex u, Vertex v,
                           const std::vector<int> & indices) -> Assembly {
  Assembly out;
  if (u == v) {
    out.path = Path{u};
    return out;
  }
  if (g.has_edge(u, v)) {
    out.attempts = 1;
    out.path = Path{u, v};
    return out;
  }
  if (indices.empty()) {
    out.diagnosis = PairDiagnosis::no_index;
    return out;
  }

  for (int i : indices) {
    const auto & support = family.supports[static_cast<std::size_t>(i)];
    const auto & record = goodness[static_cast<std::size_t>(i)];
    if (!record.good) {
      // Only a = b candidates are usable; they come in increasing order of a.
      auto shared = support & g.neighbors(u);
      shared &= g.neighbors(v);
      for (int a = shared.find_first(); a >= 0; a = shared.find_next(a + 1)) {
        ++out.attempts;
        Path path{u, a, v};
        if (is_rainbow_path(g, col, path)) {
          out.path = std::move(path);
          out.provenance = {PathProvenance::Kind::shared_neighbor, i, a, a, -1, -1};
          return out;
        }
      }
      continue;
    }
    auto near_u = (support & g.neighbors(u)).to_vector();
    auto near_v = (support & g.neighbors(v)).to_vector();
    for (Vertex a : near_u) {
      for (Vertex b : near_v) {
        if (a == b) {
          ++out.attempts;
          Path path{u, a, v};
          if (is_rainbow_path(g, col, path)) {
            out.path = std::move(path);
            out.provenance = {PathProvenance::Kind::shared_neighbor, i, a, b, -1, -1};
            return out;
          }
          continue;
        }
        ++out.attempts;
        auto it = record.witnesses.find(Edge{std::min(a, b), std::max(a, b)});
        if (it == record.witnesses.end())
          continue;
        auto [ap, bp] = a < b ? it->second : Edge{it->second.second, it->second.first};
        if (!distinct({u, a, ap, bp, b, v}))
          continue;
        Path path{u, a, ap, bp, b, v};
        if (is_rainbow_path(g, col, path)) {
          out.path = std::move(path);
          out.provenance = {PathProvenance::Kind::five_edge, i, a, b, ap, bp};
          return out;
        }
      }
    }
  }
  out.diagnosis = PairDiagnosis::no_good_path;
  return out;
}

} // namespace

auto assemble_path(const Graph & g, const EdgeColoring & col, const SampleFamily & family,
                   const std::vector<SetGoodness> & goodness, Vertex u, Vertex v) -> Assembly {
  std::vector<int> indices;
  if (u != v && !g.has_edge(u, v))
    indices = index_set(g, family, u, v);
  return assemble_from_indices(g, col, family, goodness, u, v, indices);
}

auto certify(const Graph & g, const EdgeColoring & col, Delta delta, std::uint64_t seed, SampleOverrides overrides)
    -> CertifyResult {
  const int n = g.n();
  auto family = sample_family(g, delta, seed, overrides);
  std::vector<SetGoodness> goodness;
  goodness.reserve(static_cast<std::size_t>(family.t));
  int good_sets = 0;
  Bitset good_mask(family.t);
  for (int i = 0; i < family.t; ++i) {
    goodness.push_back(is_good(g, family, i));
    if (goodness.back().good) {
      ++good_sets;
      good_mask.set(i);
    }
  }

  // hits[u] = indices i with S_i ∩ N(u) nonempty; I_{u,v} = hits[u] & hits[v].
  std::vector<Bitset> hits(static_cast<std::size_t>(n), Bitset(family.t));
  for (Vertex u = 0; u < n; ++u)
    for (int i = 0; i < family.t; ++i)
      if (family.supports[static_cast<std::size_t>(i)].intersects(g.neighbors(u)))
        hits[static_cast<std::size_t>(u)].set(i);

  CertifyResult result;
  auto & stats = result.stats;
  stats.t = family.t;
  stats.k = family.k;
  stats.seed = seed;
  stats.good_set_fraction = static_cast<double>(good_sets) / family.t;
  int min_index = family.t;

  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      auto common = hits[static_cast<std::size_t>(u)] & hits[static_cast<std::size_t>(v)];
      min_index = std::min(min_index, common.count());
      std::vector<int> indices;
      const bool indexed = !common.none();
      if (!g.has_edge(u, v)) {
        // Without a common neighbor inside S, bad sets offer no candidate.
        auto shared = g.neighbors(u) & g.neighbors(v);
        if (!shared.intersects(family.covered) && !common.none())
          common &= good_mask;
        indices = common.to_vector();
      }
      auto assembly = assemble_from_indices(g, col, family, goodness, u, v, indices);
      if (!assembly.path && indexed)
        assembly.diagnosis = PairDiagnosis::no_good_path;

      Edge pair{u, v};
      ++stats.pairs;
      stats.total_attempts += assembly.attempts;
      stats.max_attempts = std::max(stats.max_attempts, assembly.attempts);
      result.attempts.emplace(pair, assembly.attempts);
      if (assembly.path) {
        stats.max_path_length = std::max(stats.max_path_length, static_cast<int>(assembly.path->size()) - 1);
        result.certificate.paths.emplace(pair, std::move(*assembly.path));
        result.certificate.provenance.emplace(pair, assembly.provenance);
      } else {
        result.failures.push_back({pair, assembly.diagnosis});
      }
    }
  }
  stats.min_index_fraction = n >= 2 ? static_cast<double>(min_index) / family.t : 1.0;
  result.success = result.failures.empty();
  return result;
}

auto write_certificate(std::ostream & out, const CertifyResult & result) -> void {
  for (const auto & [pair, path] : result.certificate.paths) {
    out << "c " << pair.first << ' ' << pair.second << " :";
    for (Vertex v : path)
      out << ' ' << v;
    out << '\n';
  }
  for (const auto & f : result.failures)
    out << "f " << f.pair.first << ' ' << f.pair.second << ' ' << diagnosis_name(f.diagnosis) << '\n';

  const auto & s = result.stats;
  out << "# stats\n"
      << "status=" << (result.success ? "success" : "failure") << '\n'
      << "seed=" << s.seed << '\n'
      << "t=" << s.t << '\n'
      << "k=" << s.k << '\n'
      << "pairs=" << s.pairs << '\n'
      << "certified_pairs=" << result.certificate.paths.size() << '\n'
      << "failed_pairs=" << result.failures.size() << '\n'
      << "good_set_fraction=" << s.good_set_fraction << '\n'
      << "min_index_fraction=" << s.min_index_fraction << '\n'
      << "total_attempts=" << s.total_attempts << '\n'
      << "max_attempts=" << s.max_attempts << '\n'
      << "max_path_length=" << s.max_path_length << '\n';
}

auto certificate_sound(const Graph & g, const EdgeColoring & col, const Certificate & cert) -> bool {
  for (const auto & [pair, path] : cert.paths) {
    if (path.empty() || path.size() > 6)
      return false;
    if (path.front() != pair.first || path.back() != pair.second)
      return false;
    try {
      if (!is_rainbow_path(g, col, path))
        return false;
    } catch (const ParameterError &) {
      return false;
    }
  }
  return true;
}

} // namespace rpg
