#pragma once

#include <stdexcept>
#include <string>

namespace rpg {

/// Infeasible or out-of-range model parameters.
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Instance exceeds what an exact routine supports (color width, oracle size).
class CapacityError : public std::length_error {
public:
  using std::length_error::length_error;
};

/// Malformed input text; carries the 1-based line number.
class FormatError : public std::runtime_error {
public:
  FormatError(int line, const std::string & what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), _line(line) {}

  auto line() const -> int { return _line; }

private:
  int _line;
};

} // namespace rpg
