#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace astk::cli {

/// Entry point behind the binary: returns the process exit status.
/// 0 success, 1 validation failure (with a report on stdout), 2 I/O or
/// format errors. Deterministic for fixed inputs and seed.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace astk::cli
