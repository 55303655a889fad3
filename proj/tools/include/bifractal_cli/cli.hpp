#pragma once

#include <iosfwd>

namespace bifractal::cli {

/// Entry point of the `bifractal` tool. Returns the process exit status;
/// module errors are reported as {"error": {"type", "message"}} on `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace bifractal::cli
