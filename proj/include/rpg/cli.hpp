#pragma once

#include <iosfwd>

namespace rpg {

/// Exit codes: 0 property holds / checks pass, 1 property fails / mismatch, 2 usage or input error.
int run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err);

} // namespace rpg
