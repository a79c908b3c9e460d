#pragma once

// End-to-end run: parse the input document, build the tower, evaluate every
// condition, decide, and emit the report and plots. Returns the process
// exit status (0 lift exists, 2 obstructed, 3 inconclusive, 1 error).

#include <iosfwd>
#include <string>

#include "calkin/report.hpp"

namespace calkin {

struct RunOutcome {
    int exit_code = 1;
    Json report;
    std::string error;
};

// Runs on an in-memory document; writes nothing.
RunOutcome run_document(const std::string& text, const RunConfig& config);

// Full artifact-producing run (report file + SVG directory + stderr diagnostics).
int run(const RunConfig& config, std::ostream& err);

}  // namespace calkin
