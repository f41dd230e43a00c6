#pragma once

/**
 * Dynamically sized bitset over [0, size). Used for adjacency rows,
 * vertex sets and source sets in the rainbow reachability kernels.
 */

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace rpg {

using BitWord = std::uint64_t;
inline constexpr int bits_per_word = 64;

class Bitset {
public:
  Bitset() = default;
  explicit Bitset(int size) : _size(size), _words(words_for(size), 0) {}

  static auto words_for(int size) -> std::size_t {
    return static_cast<std::size_t>((size + bits_per_word - 1) / bits_per_word);
  }

  auto size() const -> int { return _size; }

  auto set(int a) -> void { _words[a / bits_per_word] |= BitWord{1} << (a % bits_per_word); }
  auto reset(int a) -> void { _words[a / bits_per_word] &= ~(BitWord{1} << (a % bits_per_word)); }
  auto test(int a) const -> bool { return (_words[a / bits_per_word] >> (a % bits_per_word)) & 1U; }

  auto set_all() -> void {
    for (auto & w : _words)
      w = ~BitWord{0};
    trim();
  }

  auto clear() -> void {
    for (auto & w : _words)
      w = 0;
  }

  auto count() const -> int {
    int result = 0;
    for (auto w : _words)
      result += std::popcount(w);
    return result;
  }

  auto none() const -> bool {
    for (auto w : _words)
      if (w != 0)
        return false;
    return true;
  }

  auto all() const -> bool { return count() == _size; }

  auto intersects(const Bitset & other) const -> bool {
    for (std::size_t i = 0; i < _words.size(); ++i)
      if (_words[i] & other._words[i])
        return true;
    return false;
  }

  /// True iff (this & other & ~excluded) is nonempty.
  auto intersects_excluding(const Bitset & other, const Bitset & excluded) const -> bool {
    for (std::size_t i = 0; i < _words.size(); ++i)
      if (_words[i] & other._words[i] & ~excluded._words[i])
        return true;
    return false;
  }

  auto operator|=(const Bitset & other) -> Bitset & {
    for (std::size_t i = 0; i < _words.size(); ++i)
      _words[i] |= other._words[i];
    return *this;
  }

  auto operator&=(const Bitset & other) -> Bitset & {
    for (std::size_t i = 0; i < _words.size(); ++i)
      _words[i] &= other._words[i];
    return *this;
  }

  auto subtract(const Bitset & other) -> Bitset & {
    for (std::size_t i = 0; i < _words.size(); ++i)
      _words[i] &= ~other._words[i];
    return *this;
  }

  /// Index of the lowest set bit at or after `from`, or -1.
  auto find_next(int from) const -> int {
    if (from >= _size)
      return -1;
    auto wi = static_cast<std::size_t>(from / bits_per_word);
    BitWord w = _words[wi] & (~BitWord{0} << (from % bits_per_word));
    while (true) {
      if (w != 0)
        return static_cast<int>(wi) * bits_per_word + std::countr_zero(w);
      if (++wi == _words.size())
        return -1;
      w = _words[wi];
    }
  }

  auto find_first() const -> int { return find_next(0); }

  template <typename F>
  auto for_each(F && f) const -> void {
    for (std::size_t wi = 0; wi < _words.size(); ++wi) {
      BitWord w = _words[wi];
      while (w != 0) {
        f(static_cast<int>(wi) * bits_per_word + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }

  auto to_vector() const -> std::vector<int> {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for_each([&](int v) { out.push_back(v); });
    return out;
  }

  friend auto operator==(const Bitset &, const Bitset &) -> bool = default;

private:
  auto trim() -> void {
    if (_size % bits_per_word != 0 && !_words.empty())
      _words.back() &= (BitWord{1} << (_size % bits_per_word)) - 1;
  }

  int _size = 0;
  std::vector<BitWord> _words;
};

inline auto operator&(Bitset a, const Bitset & b) -> Bitset { return a &= b; }
inline auto operator|(Bitset a, const Bitset & b) -> Bitset { return a |= b; }

} // namespace rpg
