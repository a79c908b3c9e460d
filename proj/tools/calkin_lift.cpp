// calkin-lift: decide, from a geometric description of a generator
// spectrum, whether the squaring-tower criteria certify a semigroup lift,
// and emit a JSON report with per-level SVG plots.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "calkin/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"calkin-lift: semigroup lifting criteria on spectrum descriptions"};

    calkin::RunConfig config;
    std::vector<std::string> overrides;

    app.add_option("--input", config.input_path, "input spectrum document")->required();
    app.add_option("--depth", config.depth, "tower depth N")->capture_default_str();
    app.add_option("--theta-cells", config.theta_cells, "theta grid size (power of two)")
        ->capture_default_str();
    app.add_option("--u-cells", config.u_cells_per_unit, "u cells per unit at level 0")
        ->capture_default_str();
    app.add_option("--fibers", config.fiber_count, "canonical and twisted fiber count each")
        ->capture_default_str();
    app.add_option("--fiber-depth", config.fiber_depth, "fiber sampling depth")
        ->capture_default_str();
    app.add_option("--seed", config.seed, "RNG seed")->capture_default_str();
    app.add_flag("--assume-normal-lifts", config.assume_normal_lifts,
                 "assume each semigroup element has a normal lift");
    app.add_option("--report", config.report_path, "report JSON path (stdout when omitted)");
    app.add_option("--svg-dir", config.svg_dir, "directory for per-level SVG plots");
    app.add_option("--threshold", overrides, "threshold override key=value (repeatable)");

    CLI11_PARSE(app, argc, argv);

    for (const std::string& kv : overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::cerr << "calkin-lift: --threshold expects key=value, got '" << kv << "'\n";
            return 1;
        }
        try {
            config.threshold_overrides.emplace_back(kv.substr(0, eq), std::stod(kv.substr(eq + 1)));
        } catch (const std::exception&) {
            std::cerr << "calkin-lift: bad threshold value in '" << kv << "'\n";
            return 1;
        }
    }

    config.max_threads = 1;
    if (const char* env = std::getenv("CALKIN_LIFT_THREADS")) {
        try {
            config.max_threads = std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            std::cerr << "calkin-lift: ignoring malformed CALKIN_LIFT_THREADS='" << env << "'\n";
        }
    }

    return calkin::run(config, std::cerr);
}
