#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "masa/group.hpp"

namespace masa::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInternalError = 1,
  kInputError = 2,
  kNegativeVerdict = 3,
};

/// Subset literal: comma-separated element indices, `{}` or the empty string
/// for ∅, or `gen:a,b,...` for the subgroup generated by the listed elements.
ElementSet parse_subset(const FiniteGroup& group, std::string_view literal);

/// Runs one command line (args[0] is the subcommand, no program name) and
/// returns the process exit code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace masa::cli
