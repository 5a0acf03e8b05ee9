#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ltlsps {

/// Runs the command-line tool on the given arguments (without argv[0]).
/// Exit codes: 0 success / holds / SAT / true, 1 UNSAT / violation / false,
/// 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace ltlsps
