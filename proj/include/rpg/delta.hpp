#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace rpg {

/// Minimum-degree density held as an exact fraction, so that thresholds
/// such as ceil(delta * n) and ceil(6 / delta) never suffer rounding.
class Delta {
public:
  Delta(std::int64_t num, std::int64_t den);

  /// Accepts "0.35", ".5", "1/3".
  static auto parse(std::string_view text) -> Delta;

  auto num() const -> std::int64_t { return _num; }
  auto den() const -> std::int64_t { return _den; }
  auto value() const -> double { return static_cast<double>(_num) / static_cast<double>(_den); }

  /// ceil(delta * n)
  auto min_degree_for(int n) const -> int;

  auto to_string() const -> std::string;

  friend auto operator==(const Delta &, const Delta &) -> bool = default;

private:
  std::int64_t _num;
  std::int64_t _den;
};

/// ceil(a / b) for a >= 0, b > 0.
inline constexpr auto ceil_div(std::int64_t a, std::int64_t b) -> std::int64_t { return (a + b - 1) / b; }

} // namespace rpg
