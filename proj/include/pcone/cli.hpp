#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcone {

/// Command-line front end.  Parses the arguments (subcommand plus flags),
/// runs it, and writes exactly one JSON document to `out`.  Returns the
/// process exit code:
///   0  success,
///   1  malformed input (unreadable file, bad JSON, schema mismatch, bad
///      invocation),
///   2  invariant violation (validation failures, domain errors, failed
///      identity checks),
///   3  solver non-convergence (diagnostics attached to the document).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// main()-style wrapper over std::cout / std::cerr.
int run(int argc, char** argv);

}  // namespace pcone
