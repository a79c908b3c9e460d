#include "calkin/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "calkin/svg.hpp"

namespace calkin {

namespace {

struct Thresholds {
    ConditionThresholds cond;
    ContinuityThresholds cont;
};

Thresholds apply_overrides(const RunConfig& config) {
    Thresholds th;
    for (const auto& [key, value] : config.threshold_overrides) {
        if (key == "sep-cells") th.cond.sep_cells = value;
        else if (key == "margin-cells") th.cond.margin_cells = value;
        else if (key == "nec-fail") th.cont.nec_fail = value;
        else if (key == "nec-pass") th.cont.nec_pass = value;
        else if (key == "o2n-ratio") th.cont.o2n_ratio = value;
        else if (key == "quasi-k") th.cont.quasi_max_k = static_cast<int>(value);
        else throw std::runtime_error("unknown threshold key '" + key + "'");
    }
    return th;
}

}  // namespace

RunOutcome run_document(const std::string& text, const RunConfig& config) {
    RunOutcome out;
    try {
        Thresholds th = apply_overrides(config);
        Document doc = parse_document(text);

        ResolutionParams res;
        res.theta_cells = config.theta_cells;
        res.u_cells_per_unit = config.u_cells_per_unit;
        if (res.theta_cells <= 0 || (res.theta_cells & (res.theta_cells - 1)) != 0)
            throw std::runtime_error("theta-cells must be a positive power of two");

        Tower tower = build_tower(doc.spec, config.depth, res, config.max_threads);

        std::vector<ConditionReport> per_level;
        for (const Level& lv : tower.levels) per_level.push_back(check_level(lv, doc.spec, th.cond));

        auto model = model_from_decls(doc.models);
        KernelResult kernel = check_kernel_condition(tower, model, config.assume_normal_lifts);

        int fiber_depth = std::max(config.fiber_depth, config.depth);
        std::vector<FiberPoint> fibers =
            sample_fibers(tower, config.fiber_count, config.fiber_count, config.seed, fiber_depth);

        ContinuityReport continuity;
        continuity.eta_finite = tower.bounds.eta != -kInf;
        continuity.necessary = check_necessary(tower, fibers, th.cont);
        continuity.sufficient = check_sufficient_O2n(tower, th.cont);
        std::vector<ContinuityProbe> probes;
        for (const ProbeDecl& d : doc.probes) probes.push_back(make_probe(d, fiber_depth));
        if (probes.empty()) probes.push_back(default_probe(fiber_depth));
        for (const ContinuityProbe& p : probes)
            continuity.quasi.push_back(quasi_uniform_test(tower, fibers, p, th.cont));

        PerfectnessVerdict perfect = is_delta_perfect(tower);
        Verdict verdict = decide(tower, std::move(per_level), std::move(kernel),
                                 std::move(continuity), perfect);

        out.report = build_report(config, tower, verdict, fibers);
        if (!config.svg_dir.empty()) {
            std::filesystem::create_directories(config.svg_dir);
            for (const Level& lv : tower.levels)
                write_level_svg(lv, config.svg_dir + "/level_" + std::to_string(lv.n) + ".svg");
        }
        switch (verdict.classification) {
            case Classification::LiftExistsC0:
            case Classification::LiftExistsDyadic: out.exit_code = 0; break;
            case Classification::ObstructedIndex: out.exit_code = 2; break;
            case Classification::Inconclusive: out.exit_code = 3; break;
        }
    } catch (const std::exception& e) {
        out.exit_code = 1;
        out.error = e.what();
    }
    return out;
}

int run(const RunConfig& config, std::ostream& err) {
    std::ifstream in(config.input_path, std::ios::binary);
    if (!in) {
        err << "calkin-lift: cannot read input '" << config.input_path << "'\n";
        return 1;
    }
    std::ostringstream buf;
    buf << in.rdbuf();

    RunOutcome outcome = run_document(buf.str(), config);
    if (outcome.exit_code == 1) {
        err << "calkin-lift: " << outcome.error << "\n";
        return 1;  // no partial report
    }
    if (!config.report_path.empty()) {
        std::ofstream rep(config.report_path, std::ios::binary);
        if (!rep) {
            err << "calkin-lift: cannot write report '" << config.report_path << "'\n";
            return 1;
        }
        rep << outcome.report.dump(2) << "\n";
    } else {
        std::cout << outcome.report.dump(2) << "\n";
    }
    return outcome.exit_code;
}

}  // namespace calkin
