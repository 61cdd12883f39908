#pragma once

#include <ostream>

namespace nwfs::io {

/// Parses the command line and runs one subcommand. Returns the process exit
/// code: 0 success, 2 budget exhausted, 3 refuted (law counterexample, failed
/// bijection or validation, non-surjective comparison), 4 input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nwfs::io
