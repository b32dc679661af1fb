#pragma once

#include <iosfwd>

namespace phip {

/// Exit codes: 0 success, 1 a bound failed under `verify`, 2 usage or input
/// error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int cli_main(int argc, const char* const* argv);

}  // namespace phip
