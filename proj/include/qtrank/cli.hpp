#pragma once

#include <qtrank/intpoly.hpp>

#include <iosfwd>
#include <string>
#include <string_view>

namespace qtrank {

// Comma-separated coefficient list, constant term first ("0,3,3" is
// 3X^2 + 3X). Arbitrary-precision integers, optional sign, spaces around
// commas tolerated. std::invalid_argument on anything else. Parsing trims
// trailing zero coefficients, so print(parse(s)) normalizes s while
// parse(print(P)) == P always.
IntPoly parse_coeff_list(std::string_view s);
std::string format_coeff_list(const IntPoly& p);

// Whole command-line front end; main() forwards here so tests can drive it.
// Machine-readable bodies go to `out` (or the file a subcommand was pointed
// at); the reproducibility header goes on top of comment-tolerant bodies
// ('#'-prefixed lines) and to `err` when the body is bare JSON. Returns the
// process exit status: 0 success, 2 validation or usage error, 3 budget
// exceeded.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace qtrank
