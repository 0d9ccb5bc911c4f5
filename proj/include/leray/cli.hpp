#pragma once

#include <string>

#include "leray/config.hpp"

namespace leray {

/// Subcommand bodies for the `leray` tool.  Each returns a process exit
/// code: 0 on success, 2 for scheme divergence (mapped by the caller from
/// the thrown error), 3 for config errors.
int cmd_run(const RunConfig& cfg);
int cmd_constants(const RunConfig& cfg);
int cmd_contraction(const RunConfig& cfg);
int cmd_compare_schemes(const RunConfig& cfg);
int cmd_roundtrip(const RunConfig& cfg);

/// Map a thrown SolverError to the documented exit codes.
int exit_code_for(ErrorKind kind);

}  // namespace leray
