#pragma once

// Constructive certificate of rainbow connectivity: sample t vertex
// multisets, test which are good, and assemble rainbow paths of length at
// most five through them. One-sided: success proves rainbow connectivity,
// failure proves nothing.

#include "rpg/bitset.hpp"
#include "rpg/coloring.hpp"
#include "rpg/delta.hpp"
#include "rpg/graph.hpp"
#include "rpg/rainbow.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rpg {

/// ceil(100 ln n)
auto default_set_count(int n) -> int;
/// ceil(6 / delta) + 1
auto default_set_size(Delta delta) -> int;

struct SampleFamily {
  int t = 0;
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<Vertex>> sets; // multisets, in draw order
  std::vector<Bitset> supports;          // distinct members of each set
  Bitset covered;                        // S, the union of all sets
  std::optional<std::string> warning;
};

struct SampleOverrides {
  std::optional<int> t;
  std::optional<int> k;
};

auto sample_family(const Graph & g, Delta delta, std::uint64_t seed, SampleOverrides overrides = {})
    -> SampleFamily;

/// Goodness of one set. witnesses maps each pair (a, b), a < b, of support
/// vertices to an edge (a', b') with a' in N(a) \ S and b' in N(b) \ S.
/// Bad sets keep the witnesses found before the first failing pair.
struct SetGoodness {
  bool good = false;
  std::map<Edge, Edge> witnesses;
};

auto is_good(const Graph & g, const SampleFamily & family, int i) -> SetGoodness;

/// Indices i such that both u and v have a neighbor in S_i.
auto index_set(const Graph & g, const SampleFamily & family, Vertex u, Vertex v) -> std::vector<int>;

struct PathProvenance {
  enum class Kind { direct, shared_neighbor, five_edge };
  Kind kind = Kind::direct;
  int set_index = -1;
  Vertex a = -1, b = -1, a_prime = -1, b_prime = -1;
};

enum class PairDiagnosis { no_index, no_good_path };

auto diagnosis_name(PairDiagnosis d) -> std::string_view;

struct Assembly {
  std::optional<Path> path;
  PathProvenance provenance;
  PairDiagnosis diagnosis = PairDiagnosis::no_good_path; // meaningful when !path
  int attempts = 0;
};

/**
 * The path construction for one pair. Adjacent pairs get the edge itself.
 * Otherwise, for each index in I_{u,v} and each candidate a in S_i ∩ N(u),
 * b in S_i ∩ N(v) (vertex order), try u-a-v when a = b and, when S_i is good,
 * u-a-a'-b'-b-v through the recorded witness. Candidates that repeat a
 * vertex are skipped. First rainbow candidate wins.
 */
auto assemble_path(const Graph & g, const EdgeColoring & col, const SampleFamily & family,
                   const std::vector<SetGoodness> & goodness, Vertex u, Vertex v) -> Assembly;

struct Certificate {
  std::map<Edge, Path> paths;
  std::map<Edge, PathProvenance> provenance;
};

struct PairFailure {
  Edge pair;
  PairDiagnosis diagnosis;
};

struct CertifyStats {
  int t = 0;
  int k = 0;
  std::uint64_t seed = 0;
  double good_set_fraction = 0;
  double min_index_fraction = 0;
  std::int64_t pairs = 0;
  std::int64_t total_attempts = 0;
  int max_attempts = 0;
  int max_path_length = 0;
};

struct CertifyResult {
  bool success = false;
  Certificate certificate; // paths for every certified pair, even on failure
  std::vector<PairFailure> failures;
  std::map<Edge, int> attempts;
  CertifyStats stats;
};

auto certify(const Graph & g, const EdgeColoring & col, Delta delta, std::uint64_t seed,
             SampleOverrides overrides = {}) -> CertifyResult;

/// Certificate lines "c <u> <v> : <path>", failure lines "f <u> <v> <diagnosis>",
/// then a "# stats" block of key=value lines.
auto write_certificate(std::ostream & out, const CertifyResult & result) -> void;

/// Every stored path is rainbow, joins its pair and has at most five edges.
auto certificate_sound(const Graph & g, const EdgeColoring & col, const Certificate & cert) -> bool;

} // namespace rpg
