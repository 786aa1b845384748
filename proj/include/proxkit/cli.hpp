#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace proxkit {

/// Runs one CLI invocation (args exclude the program name) writing artifacts
/// to `out` and diagnostics to `err`.
///
/// Exit codes: 0 verdict pass / successful tabulation or search hit,
/// 1 verdict fail or search miss (a witness is part of the report),
/// 2 usage or oracle errors, 3 inconclusive verdicts.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace proxkit
