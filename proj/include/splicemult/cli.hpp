#pragma once

#include <iosfwd>

#include "splicemult/error.hpp"

namespace splicemult {

/// 1 input or validation, 2 mathematical precondition, 3 resource cap.
int exit_code(ErrorKind k);

/// Entry point of the splicemult tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace splicemult
