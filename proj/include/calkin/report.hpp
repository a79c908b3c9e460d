#pragma once

// JSON report assembly and schema validation. The report layout is
// {meta, spec_echo, tower_summary, levels[], kernel, continuity, verdict};
// serialization is byte-deterministic for a fixed input and configuration.

#include <string>

#include "json.hpp"

#include "calkin/verdict.hpp"

namespace calkin {

using Json = nlohmann::ordered_json;

struct RunConfig {
    std::string input_path;
    int depth = 8;
    int theta_cells = 2048;
    int u_cells_per_unit = 1024;
    int fiber_count = 16;     // canonical and twisted each
    int fiber_depth = 32;
    uint64_t seed = 0;
    bool assume_normal_lifts = false;
    std::string report_path;
    std::string svg_dir;
    std::vector<std::pair<std::string, double>> threshold_overrides;
    int max_threads = 1;
};

Json build_report(const RunConfig& config, const Tower& tower, const Verdict& verdict,
                  const std::vector<FiberPoint>& fibers);

// Structural check of the published layout; throws std::runtime_error on a
// violation. Returns quietly on success.
void validate_report(const Json& report);

Json json_complex(std::complex<double> z);
Json json_extended(double x);  // finite -> number, +-inf -> "inf"/"-inf"

}  // namespace calkin
