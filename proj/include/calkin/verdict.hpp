#pragma once

// Decision engine: homotopy classification of the tower, the special
// inverse-limit computations that force a trivial extension, and the final
// classification chain.

#include <optional>
#include <string>
#include <vector>

#include "calkin/conditions.hpp"
#include "calkin/continuity.hpp"
#include "calkin/opindex.hpp"
#include "calkin/tower.hpp"

namespace calkin {

enum class Classification { LiftExistsC0, LiftExistsDyadic, ObstructedIndex, Inconclusive };
enum class Route { SurjectiveConnectingMaps, MilnorSpecialCase, IndexObstruction, None };
enum class HomotopyClass { FiniteSets, MCircles, Annulus, Other };
enum class MilnorStatus { ExtZero, Unknown };

const char* classification_name(Classification c);
const char* route_name(Route r);
const char* homotopy_name(HomotopyClass h);
const char* milnor_name(MilnorStatus m);

struct Homotopy {
    HomotopyClass cls = HomotopyClass::Other;
    int m = 0;  // number of circles for MCircles
};

Homotopy classify_homotopy(const Tower& t);
MilnorStatus milnor_special(const Homotopy& hc);

struct Verdict {
    Classification classification = Classification::Inconclusive;
    Route route = Route::None;
    KernelResult kernel;
    std::vector<ConditionReport> per_level;
    ContinuityReport continuity;
    PerfectnessVerdict perfectness;
    Homotopy homotopy;
    BoundedImResult bounded_im;
    HalflineSectionsResult halfline_sections;
    std::optional<int> certified_from_level;
    std::vector<std::string> blocking;  // what stands in the way of a definite class
    std::string stability_note;         // symbolic closure of "for all n >= n0" where available
};

Verdict decide(const Tower& t, std::vector<ConditionReport> per_level, KernelResult kernel,
               ContinuityReport continuity, PerfectnessVerdict perfectness);

}  // namespace calkin
