#include "calkin/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace calkin {

const char* verdict3_name(Verdict3 v) {
    switch (v) {
        case Verdict3::Holds: return "holds";
        case Verdict3::Fails: return "fails";
        case Verdict3::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

SeparationResult check_separation(const Level& level, const ConditionThresholds& th) {
    SeparationResult out;
    if (level.finite_points) {
        // Exact route: the antipodal subset and its complement in a finite
        // set are disjoint finite sets, so the closure condition holds as
        // soon as one of them is what it is.
        const auto& pts = *level.finite_points;
        int antipodal = 0;
        for (auto z : pts)
            for (auto w : pts)
                if (std::abs(z + w) < 1e-9 * std::max(1.0, std::abs(z))) {
                    ++antipodal;
                    break;
                }
        out.v = Verdict3::Holds;
        out.distance_cells = kInf;
        std::ostringstream ev;
        ev << "finite level: " << antipodal << "/" << pts.size()
           << " antipodal points; disjoint finite sets are separated";
        out.evidence = ev.str();
        return out;
    }
    const CylinderRaster& omega = level.region;
    const CylinderRaster& anti = level.antipodal;
    CylinderRaster rest = difference(omega, anti);
    if (anti.empty() || rest.empty()) {
        out.v = Verdict3::Holds;
        out.distance_cells = kInf;
        out.evidence = anti.empty() ? "antipodal set empty" : "level equals its antipodal set";
        return out;
    }
    if (rasters_intersect(dilate8(rest), anti)) {
        out.v = Verdict3::Fails;
        out.distance_cells = 0;
        out.evidence = "closure of the non-antipodal part meets the antipodal set";
        return out;
    }
    double d = separation_cells(rest, anti);
    out.distance_cells = d;
    if (d >= th.sep_cells) {
        out.v = Verdict3::Holds;
        std::ostringstream ev;
        ev << "distance " << d << " cells >= " << th.sep_cells;
        out.evidence = ev.str();
    } else {
        out.v = Verdict3::Inconclusive;
        std::ostringstream ev;
        ev << "distance " << d << " cells below the " << th.sep_cells << "-cell criterion";
        out.evidence = ev.str();
    }
    return out;
}

EmptyDirectionResult check_empty_direction(const Level& level, const SpectrumSpec& spec) {
    EmptyDirectionResult out;
    ThetaSet cov = level_theta_coverage(spec, level.n);
    if (!cov.full()) {
        auto gaps = theta_gaps(cov);
        if (!gaps.empty()) {
            const ArcSeg* widest = &gaps[0];
            for (const ArcSeg& g : gaps)
                if (g.length() > widest->length()) widest = &g;
            out.v = Verdict3::Holds;
            out.alpha = wrap_angle(0.5 * (widest->lo + widest->hi));
            // Prefer the canonical direction pi when it is available.
            for (const ArcSeg& g : gaps)
                if (arc_distance(kPi, g) == 0 && g.length() > 1e-9) {
                    out.alpha = kPi;
                    break;
                }
            std::ostringstream ev;
            ev << "direction " << out.alpha << " misses the level set (gap of " << widest->length()
               << " rad)";
            out.evidence = ev.str();
            return out;
        }
    }
    if (cov.full()) {
        out.v = Verdict3::Fails;
        out.evidence = "every direction is hit (symbolic coverage of the full circle)";
        return out;
    }
    // Fallback on raster evidence only (unreached for the primitive
    // vocabulary, where coverage is exact).
    const CylinderRaster& r = level.region;
    for (long k = 0; k < r.theta_cells(); ++k) {
        bool hit = r.deep_cols[k] != 0;
        for (long j = r.j_lo(); j <= r.j_hi() && !hit; ++j) hit = r.at(j, k);
        if (!hit) {
            out.v = Verdict3::Holds;
            out.alpha = r.theta_of_col(k);
            out.evidence = "raster column empty";
            return out;
        }
    }
    out.v = Verdict3::Inconclusive;
    out.evidence = "all raster columns hit; no symbolic certificate";
    return out;
}

CrossRetractResult check_cross_retract(const Level& level, const SpectrumSpec& spec,
                                       const ConditionThresholds& th) {
    CrossRetractResult out;
    double margin = th.margin_cells * kTwoPi / std::max(1, level.region.theta_cells());
    auto sections = finite_radial_sections(spec, level.n);

    // Failure can be read off any section, finite radii or not.
    auto section_fails = [&](const ThetaSet& s, std::string& why) {
        if (s.full()) {
            why = "a circle section is the full circle (component length 2*pi >= pi)";
            return true;
        }
        if (s.kind == ThetaSet::Kind::Arcs) {
            for (const ArcSeg& a : s.arcs)
                if (a.length() >= kPi) {
                    std::ostringstream ev;
                    ev << "a section component of length " << a.length() << " >= pi";
                    why = ev.str();
                    return true;
                }
        }
        if (!theta_symmetric_under_pi(s, 1e-9)) {
            why = "a circle section is not symmetric under z -> -z";
            return true;
        }
        return false;
    };

    if (!sections) {
        // Re-projection is not finite; probe the sections that exist anyway
        // so a hard failure is still reported.
        std::vector<double> probes;
        for (const auto& p : spec.primitives) {
            Extent e = re_extent(p);
            if (e.lo != -kInf) probes.push_back(e.lo);
            probes.push_back(e.hi);
            if (e.lo != -kInf && e.lo != e.hi) probes.push_back(0.5 * (e.lo + e.hi));
        }
        for (double s : probes) {
            ThetaSet sec = section_theta_at_level(spec, level.n, s);
            if (sec.empty()) continue;
            std::string why;
            if (section_fails(sec, why)) {
                out.v = Verdict3::Fails;
                out.evidence = why;
                return out;
            }
        }
        out.v = Verdict3::Inconclusive;
        out.evidence = "Re-projection of the spectrum is not finite; the finite-radii criterion does not apply";
        return out;
    }

    std::vector<ArcSeg> union_arcs;
    bool any = false;
    for (const RadialSection& sec : *sections) {
        if (sec.theta.empty()) continue;
        any = true;
        std::string why;
        if (section_fails(sec.theta, why)) {
            out.v = Verdict3::Fails;
            out.evidence = why;
            return out;
        }
        if (sec.theta.kind == ThetaSet::Kind::Arcs)
            for (const ArcSeg& a : sec.theta.arcs) {
                if (a.length() >= kPi - margin) {
                    out.v = Verdict3::Inconclusive;
                    std::ostringstream ev;
                    ev << "section component of length " << a.length()
                       << " within the margin of pi; cannot certify the strict bound";
                    out.evidence = ev.str();
                    return out;
                }
                union_arcs.push_back(a);
            }
        for (double p : sec.theta.points) union_arcs.push_back({wrap_angle(p), wrap_angle(p)});
    }
    if (!any) {
        out.v = Verdict3::Holds;
        out.evidence = "all circle sections empty";
        out.alpha = 0;
        out.theta = kPi / 2;
        return out;
    }

    // Witness directions: gaps of the union coverage give directions whose
    // rays meet no section interiorly; symmetric short components guarantee
    // gaps on both arcs joining antipodal points.
    ThetaSet unioncov;
    bool covers = false;
    unioncov.arcs = merge_arcs(union_arcs, &covers);
    unioncov.kind = covers ? ThetaSet::Kind::Full : ThetaSet::Kind::Arcs;
    out.v = Verdict3::Holds;
    if (!covers && !theta_gaps(unioncov).empty()) {
        auto gaps = theta_gaps(unioncov);
        const ArcSeg* widest = &gaps[0];
        for (const ArcSeg& g : gaps)
            if (g.length() > widest->length()) widest = &g;
        double mid = 0.5 * (widest->lo + widest->hi);
        double quarter = 0.25 * widest->length();
        out.alpha = wrap_angle(2 * (mid - quarter));  // twisting direction alpha; ray is alpha/2
        out.theta = wrap_angle(mid + quarter);
        if (angle_gap(wrap_angle(out.alpha / 2), out.theta) < 1e-9)
            out.theta = wrap_angle(out.theta + 0.5 * quarter);
    } else {
        // Sections are symmetric with components < pi, so each radius has
        // antipodal gap pairs even though the union covers the circle.
        const RadialSection* first = nullptr;
        for (const RadialSection& sec : *sections)
            if (!sec.theta.empty()) { first = &sec; break; }
        auto gaps = theta_gaps(first->theta);
        double g0 = gaps.empty() ? 0.0 : wrap_angle(0.5 * (gaps[0].lo + gaps[0].hi));
        out.alpha = wrap_angle(2 * g0);
        out.theta = wrap_angle(g0 + kPi / 2);
    }
    std::ostringstream ev;
    ev << (*sections).size() << " radii, all sections symmetric with components < pi - margin";
    out.evidence = ev.str();
    return out;
}

BoundedImResult check_bounded_im(const SpectrumSpec& spec) {
    BoundedImResult out;
    out.bounded = true;
    for (const auto& p : spec.primitives) {
        Extent e = im_extent(p);
        if (e.lo == -kInf || e.hi == kInf) {
            out.bounded = false;
            out.bound = kInf;
            return out;
        }
        out.bound = std::max({out.bound, std::fabs(e.lo), std::fabs(e.hi)});
    }
    return out;
}

HalflineSectionsResult check_halfline_sections(const SpectrumSpec& spec) {
    HalflineSectionsResult out;
    // Re-projection must be finite or a single interval.
    std::vector<std::pair<double, double>> spans;
    bool all_points = true;
    for (const auto& p : spec.primitives) {
        Extent e = re_extent(p);
        spans.emplace_back(e.lo, e.hi);
        all_points = all_points && e.lo == e.hi;
    }
    std::sort(spans.begin(), spans.end());
    if (!all_points) {
        std::vector<std::pair<double, double>> merged;
        for (auto s : spans) {
            if (!merged.empty() && s.first <= merged.back().second)
                merged.back().second = std::max(merged.back().second, s.second);
            else
                merged.push_back(s);
        }
        if (merged.size() != 1) {
            out.v = Verdict3::Fails;
            out.evidence = "Re-projection is neither finite nor a single interval";
            return out;
        }
    }
    // Sample s at every span endpoint and between consecutive breakpoints;
    // sections are constant in s between breakpoints for this vocabulary.
    std::vector<double> breakpoints;
    for (auto [lo, hi] : spans) {
        if (lo != -kInf) breakpoints.push_back(lo);
        breakpoints.push_back(hi);
    }
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
    std::vector<double> samples = breakpoints;
    for (size_t i = 0; i + 1 < breakpoints.size(); ++i)
        samples.push_back(0.5 * (breakpoints[i] + breakpoints[i + 1]));
    bool has_deep = false;
    for (auto [lo, hi] : spans) has_deep = has_deep || lo == -kInf;
    if (has_deep && !breakpoints.empty()) samples.push_back(breakpoints.front() - 1.0);

    for (double s : samples) {
        Section sec = section_at(spec, s);
        if (sec.kind == Section::Kind::Empty) continue;
        if (sec.kind != Section::Kind::HalfLine) {
            std::ostringstream ev;
            ev << "section at Re = " << s << " is not a half-line";
            out.v = Verdict3::Fails;
            out.evidence = ev.str();
            return out;
        }
    }
    out.v = Verdict3::Holds;
    out.evidence = "Re-projection finite or one interval; every nonempty section is a half-line";
    return out;
}

ConditionReport check_level(const Level& level, const SpectrumSpec& spec,
                            const ConditionThresholds& th) {
    ConditionReport rep;
    rep.n = level.n;
    rep.separation = check_separation(level, th);
    rep.empty_direction = check_empty_direction(level, spec);
    rep.cross_retract = check_cross_retract(level, spec, th);
    return rep;
}

}  // namespace calkin
