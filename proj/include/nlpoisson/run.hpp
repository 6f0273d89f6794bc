#pragma once

#include <iosfwd>

#include "nlpoisson/config.hpp"
#include "nlpoisson/report.hpp"
#include "nlpoisson/verifier.hpp"

namespace nlpoisson {

/// Initial data described by the config, on the configured grid.
InitialData load_data(const RunConfig& config);

/// Runs the configured operation without touching the filesystem.
Report execute(const RunConfig& config);

/// Executes, writes the report to config.output and prints a summary.
/// Returns 0 on pass, 1 on verification failure, 2 on any error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace nlpoisson
