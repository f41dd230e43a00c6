#include "rpg/delta.hpp"

#include "rpg/errors.hpp"

#include <charconv>
#include <numeric>

namespace rpg {

Delta::Delta(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num <= 0 || num >= den)
    throw ParameterError("delta must lie strictly between 0 and 1");
  auto g = std::gcd(num, den);
  _num = num / g;
  _den = den / g;
}

auto Delta::parse(std::string_view text) -> Delta {
  auto fail = [&] { return ParameterError("cannot parse delta '" + std::string(text) + "'"); };
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || v < 0)
      throw fail();
    return v;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos)
    return Delta(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));

  auto dot = text.find('.');
  if (dot == std::string_view::npos)
    throw fail();
  auto whole = text.substr(0, dot);
  auto frac = text.substr(dot + 1);
  if (frac.empty() || frac.size() > 15 || (!whole.empty() && parse_int(whole) != 0))
    throw fail();
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i)
    den *= 10;
  return Delta(parse_int(frac), den);
}

auto Delta::min_degree_for(int n) const -> int {
  return static_cast<int>(ceil_div(_num * n, _den));
}

auto Delta::to_string() const -> std::string {
  // Exact decimal when the denominator divides a power of ten.
  std::int64_t den = _den;
  int digits = 0;
  while (den % 10 == 0) { den /= 10; ++digits; }
  while (den % 2 == 0 || den % 5 == 0) {
    if (den % 2 == 0) den /= 2; else den /= 5;
    ++digits;
    if (digits > 15) break;
  }
  if (den != 1)
    return std::to_string(_num) + "/" + std::to_string(_den);

  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i)
    scale *= 10;
  std::int64_t scaled = _num * (scale / _den);
  std::string frac = std::to_string(scaled);
  frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
  while (frac.size() > 1 && frac.back() == '0')
    frac.pop_back();
  return "0." + frac;
}

} // namespace rpg
