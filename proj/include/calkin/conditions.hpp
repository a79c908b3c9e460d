#pragma once

// Three-valued geometric predicates on tower levels: the antipodal
// separation condition, the empty-direction condition, the cross-retract
// sufficient condition (finite radii, symmetric circle sections with short
// components), and the global bounded-Im / half-line-section tests.

#include <optional>
#include <string>

#include "calkin/tower.hpp"

namespace calkin {

enum class Verdict3 { Holds, Fails, Inconclusive };
const char* verdict3_name(Verdict3 v);

struct ConditionThresholds {
    double sep_cells = 3.0;     // index-space distance needed to call sets separated
    double margin_cells = 2.0;  // angular margin (in theta cells) on strict arc-length bounds
};

struct SeparationResult {
    Verdict3 v = Verdict3::Inconclusive;
    double distance_cells = 0;  // +inf when a side is empty
    std::string evidence;
};

struct EmptyDirectionResult {
    Verdict3 v = Verdict3::Inconclusive;
    double alpha = 0;  // witness direction when it holds
    std::string evidence;
};

struct CrossRetractResult {
    Verdict3 v = Verdict3::Inconclusive;
    double alpha = 0, theta = 0;  // witness directions when it holds
    std::string evidence;
};

struct BoundedImResult {
    bool bounded = false;
    double bound = 0;
};

struct HalflineSectionsResult {
    Verdict3 v = Verdict3::Fails;  // holds | fails
    std::string evidence;
};

SeparationResult check_separation(const Level& level, const ConditionThresholds& th = {});
EmptyDirectionResult check_empty_direction(const Level& level, const SpectrumSpec& spec);
CrossRetractResult check_cross_retract(const Level& level, const SpectrumSpec& spec,
                                       const ConditionThresholds& th = {});
BoundedImResult check_bounded_im(const SpectrumSpec& spec);
HalflineSectionsResult check_halfline_sections(const SpectrumSpec& spec);

struct ConditionReport {
    int n = 0;
    SeparationResult separation;
    EmptyDirectionResult empty_direction;
    CrossRetractResult cross_retract;
};

ConditionReport check_level(const Level& level, const SpectrumSpec& spec,
                            const ConditionThresholds& th = {});

}  // namespace calkin
