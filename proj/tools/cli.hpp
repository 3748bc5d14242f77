#pragma once

#include <ostream>

namespace fractal::cli {

/// Exit codes: 0 success, 1 numeric threshold breach or numeric failure,
/// 2 usage or configuration error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fractal::cli
