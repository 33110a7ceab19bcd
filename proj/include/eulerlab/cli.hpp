#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eulerlab {

/// Runs the eulerlab command line (classify, reproduce, eval, expand,
/// series, witness, sample) against the given argument list. args excludes
/// the program name. Exit codes: 0 success (classify: ID/QID/ND verdicts),
/// 1 input or domain error, 2 INCONCLUSIVE / witness not found / table
/// mismatch.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace eulerlab
