#pragma once

// Seed derivation and bounded draws. Every randomized operation takes an
// explicit seed; streams are split by hashing (seed, tag...) with splitmix64.
// Bounded integers are drawn by rejection so results do not depend on the
// standard library's distribution implementations.

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rpg {

inline constexpr auto splitmix64(std::uint64_t x) -> std::uint64_t {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derive a child seed from a parent seed and a sequence of tags.
inline constexpr auto derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags)
    -> std::uint64_t {
  std::uint64_t h = splitmix64(seed);
  for (auto t : tags)
    h = splitmix64(h ^ splitmix64(t + 0x632be59bd9b4e019ULL));
  return h;
}

/// Unbiased value in [0, bound) from a stream of 64-bit words.
template <typename NextWord>
auto bounded_draw(std::uint64_t bound, NextWord && next) -> std::uint64_t {
  // Reject the low tail so that every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    std::uint64_t x = next();
    if (x >= threshold)
      return x % bound;
  }
}

class Rng {
public:
  explicit Rng(std::uint64_t seed) : _engine(splitmix64(seed)) {}

  auto next() -> std::uint64_t { return _engine(); }

  auto below(std::uint64_t bound) -> std::uint64_t {
    return bounded_draw(bound, [this] { return _engine(); });
  }

  /// Fair coin with probability num/den of true.
  auto chance(std::uint64_t num, std::uint64_t den) -> bool { return below(den) < num; }

private:
  std::mt19937_64 _engine;
};

/// Stateless draw in [0, bound) keyed by (seed, a, b): a counter-based stream,
/// so the value for one key never depends on which other keys were drawn.
inline auto keyed_below(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t bound)
    -> std::uint64_t {
  std::uint64_t counter = 0;
  return bounded_draw(bound, [&] { return derive_seed(seed, {a, b, counter++}); });
}

} // namespace rpg
