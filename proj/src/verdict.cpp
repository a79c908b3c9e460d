#include "calkin/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace calkin {

const char* classification_name(Classification c) {
    switch (c) {
        case Classification::LiftExistsC0: return "LIFT_EXISTS_C0";
        case Classification::LiftExistsDyadic: return "LIFT_EXISTS_DYADIC";
        case Classification::ObstructedIndex: return "OBSTRUCTED_INDEX";
        case Classification::Inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

const char* route_name(Route r) {
    switch (r) {
        case Route::SurjectiveConnectingMaps: return "surjective-connecting-maps";
        case Route::MilnorSpecialCase: return "milnor-special-case";
        case Route::IndexObstruction: return "index-obstruction";
        case Route::None: return "none";
    }
    return "none";
}

const char* homotopy_name(HomotopyClass h) {
    switch (h) {
        case HomotopyClass::FiniteSets: return "finite-sets";
        case HomotopyClass::MCircles: return "m-circles";
        case HomotopyClass::Annulus: return "annulus";
        case HomotopyClass::Other: return "other";
    }
    return "other";
}

const char* milnor_name(MilnorStatus m) {
    return m == MilnorStatus::ExtZero ? "ext-zero" : "unknown";
}

Homotopy classify_homotopy(const Tower& t) {
    Homotopy out;
    bool all_finite = true;
    for (const Level& lv : t.levels) all_finite = all_finite && lv.finite_points.has_value();
    if (all_finite) {
        out.cls = HomotopyClass::FiniteSets;
        return out;
    }

    // Row scan: every occupied row must be a full circle; contiguous full
    // bands are radial components. Thin bands are circles, one thick band
    // spanning the whole strip is an annulus.
    int m = -1;
    bool circles_ok = true, annulus_ok = true;
    for (const Level& lv : t.levels) {
        const auto& bands = lv.sections;
        if (bands.empty()) return out;  // empty level: no recognized class
        for (const RowBand& b : bands)
            if (!b.all_full) return out;
        if (m < 0) m = static_cast<int>(bands.size());
        if (static_cast<int>(bands.size()) != m) return out;
        for (const RowBand& b : bands)
            circles_ok = circles_ok && (b.j_hi - b.j_lo + 1) <= 3;
        annulus_ok = annulus_ok && bands.size() == 1 && (bands[0].j_hi - bands[0].j_lo + 1) > 3 &&
                     !lv.region.contains_zero;
    }
    if (circles_ok) {
        out.cls = HomotopyClass::MCircles;
        out.m = m;
        return out;
    }
    if (annulus_ok && t.bounds.eta != -kInf) {
        out.cls = HomotopyClass::Annulus;
        out.m = 1;
        return out;
    }
    return out;
}

MilnorStatus milnor_special(const Homotopy& hc) {
    switch (hc.cls) {
        case HomotopyClass::FiniteSets:   // zero-dimensional limit
        case HomotopyClass::MCircles:     // solenoid-type: doubling on Z^m has trivial limit,
                                          // and the suspension side vanishes
        case HomotopyClass::Annulus:      // homotopy equivalent to the circle case
            return MilnorStatus::ExtZero;
        case HomotopyClass::Other:
            return MilnorStatus::Unknown;
    }
    return MilnorStatus::Unknown;
}

namespace {

bool level_chain_ok(const ConditionReport& rep) {
    return rep.separation.v == Verdict3::Holds &&
           (rep.empty_direction.v == Verdict3::Holds || rep.cross_retract.v == Verdict3::Holds);
}

std::string stability_note_for(const SpectrumSpec& spec, const BoundedImResult& bi, int n0, int N) {
    std::ostringstream os;
    os << "conditions verified for " << n0 << " <= n <= " << N;
    if (bi.bounded) {
        // Shrinking sectors: the theta extent 2^-n * 2B eventually stays
        // inside (-pi/2, pi/2), so the pattern is stable beyond the tested
        // depth.
        double B = std::max(bi.bound, 1e-300);
        int stable = std::max(0, static_cast<int>(std::ceil(std::log2(B / (kPi / 2)))) + 1);
        os << "; bounded Im (" << bi.bound << ") keeps the antipodal set empty and the direction pi"
           << " omitted for every n >= " << std::max(n0, stable) << " (symbolic)";
        return os.str();
    }
    bool all_lattice = true;
    for (const auto& p : spec.primitives)
        all_lattice = all_lattice && (std::holds_alternative<VLatticePrim>(p) ||
                                      std::holds_alternative<PointPrim>(p));
    if (all_lattice)
        os << "; lattice halving keeps the levels finite, so the pattern is stable (symbolic)";
    return os.str();
}

}  // namespace

Verdict decide(const Tower& t, std::vector<ConditionReport> per_level, KernelResult kernel,
               ContinuityReport continuity, PerfectnessVerdict perfectness) {
    if (static_cast<int>(per_level.size()) != t.depth + 1)
        throw TowerError("decide: per-level reports do not match the tower depth");

    Verdict v;
    v.kernel = std::move(kernel);
    v.per_level = std::move(per_level);
    v.continuity = std::move(continuity);
    v.perfectness = std::move(perfectness);
    v.homotopy = classify_homotopy(t);
    v.bounded_im = check_bounded_im(t.spec);
    v.halfline_sections = check_halfline_sections(t.spec);

    // 1. An index witness settles everything.
    if (v.kernel.status == KernelStatus::Obstructed) {
        v.classification = Classification::ObstructedIndex;
        v.route = Route::IndexObstruction;
        return v;
    }

    bool kernel_ok =
        v.kernel.status == KernelStatus::Passes || v.kernel.status == KernelStatus::Assumed;
    if (!kernel_ok) {
        v.blocking.push_back("kernel condition not established: " + v.kernel.note);
    }

    // Find n0 with the per-level chain holding from n0 through the tested depth.
    std::optional<int> n0;
    for (int n = 0; n <= t.depth; ++n) {
        bool all = true;
        for (int m = n; m <= t.depth; ++m) all = all && level_chain_ok(v.per_level[m]);
        if (all) {
            n0 = n;
            break;
        }
    }

    MilnorStatus milnor = milnor_special(v.homotopy);
    if (kernel_ok && milnor == MilnorStatus::ExtZero) {
        // Preferred over the per-level route when both apply.
        v.classification = Classification::LiftExistsDyadic;
        v.route = Route::MilnorSpecialCase;
        if (n0) v.certified_from_level = n0;
    } else if (kernel_ok && n0) {
        v.classification = Classification::LiftExistsDyadic;
        v.route = Route::SurjectiveConnectingMaps;
        v.certified_from_level = n0;
        v.stability_note = stability_note_for(t.spec, v.bounded_im, *n0, t.depth);
    } else {
        if (milnor != MilnorStatus::ExtZero)
            v.blocking.push_back("homotopy class '" + std::string(homotopy_name(v.homotopy.cls)) +
                                 "' has no special inverse-limit computation");
        if (!n0) {
            int worst = t.depth;
            v.blocking.push_back("per-level conditions do not hold through the tested depth (level " +
                                 std::to_string(worst) + ": separation " +
                                 verdict3_name(v.per_level[worst].separation.v) +
                                 ", empty-direction " +
                                 verdict3_name(v.per_level[worst].empty_direction.v) +
                                 ", cross-retract " +
                                 verdict3_name(v.per_level[worst].cross_retract.v) + ")");
        }
        v.classification = Classification::Inconclusive;
        v.route = Route::None;
        return v;
    }

    // Upgrade to a strongly continuous lift.
    if (v.perfectness.value == Ternary::Yes && v.continuity.necessary.v != Verdict3::Fails) {
        v.classification = Classification::LiftExistsC0;
    } else {
        if (v.perfectness.value != Ternary::Yes)
            v.blocking.push_back("no C0 upgrade: perfectness is " +
                                 std::string(ternary_name(v.perfectness.value)) + " (" +
                                 v.perfectness.reason + ")");
        if (v.continuity.necessary.v == Verdict3::Fails)
            v.blocking.push_back("no C0 upgrade: the necessary continuity condition fails (" +
                                 v.continuity.necessary.evidence + ")");
    }
    return v;
}

}  // namespace calkin
