#pragma once

#include <ostream>

namespace gowers {

/// Runs the gowers_lab command line. Exit codes: 0 when a value or witness
/// was produced, 1 when absent or refuted, 2 on budget exhaustion or invalid
/// input.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gowers
