#include "calkin/report.hpp"

#include <stdexcept>

namespace calkin {

Json json_complex(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

Json json_extended(double x) {
    if (x == kInf) return "inf";
    if (x == -kInf) return "-inf";
    return x;
}

namespace {

Json primitive_json(const Primitive& p) {
    Json j;
    j["kind"] = primitive_kind(p);
    std::visit(
        [&](const auto& q) {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, PointPrim>) {
                j["re"] = q.re;
                j["im"] = q.im;
            } else if constexpr (std::is_same_v<T, VSegmentPrim>) {
                j["re"] = q.re;
                j["im_lo"] = json_extended(q.im_lo);
                j["im_hi"] = json_extended(q.im_hi);
            } else if constexpr (std::is_same_v<T, HSegmentPrim>) {
                j["re_lo"] = json_extended(q.re_lo);
                j["re_hi"] = q.re_hi;
                j["im"] = q.im;
            } else if constexpr (std::is_same_v<T, RectPrim>) {
                j["re_lo"] = json_extended(q.re_lo);
                j["re_hi"] = q.re_hi;
                j["im_lo"] = json_extended(q.im_lo);
                j["im_hi"] = json_extended(q.im_hi);
            } else if constexpr (std::is_same_v<T, VLatticePrim>) {
                j["re"] = q.re;
                j["im_base"] = q.im_base;
                j["im_step"] = q.im_step;
            } else if constexpr (std::is_same_v<T, VLinePrim>) {
                j["re"] = q.re;
            } else if constexpr (std::is_same_v<T, PeriodicBandPrim>) {
                j["re_lo"] = json_extended(q.re_lo);
                j["re_hi"] = q.re_hi;
                Json ivs = Json::array();
                for (auto [a, b] : q.im_intervals) ivs.push_back(Json::array({a, b}));
                j["im_intervals"] = std::move(ivs);
                j["period"] = q.period;
            }
        },
        p);
    return j;
}

Json fiber_json(const FiberPoint& f, size_t max_coords = 40) {
    Json j;
    j["provenance"] = f.provenance;
    Json coords = Json::array();
    for (size_t i = 0; i < f.coords.size() && i < max_coords; ++i)
        coords.push_back(json_complex(f.coords[i]));
    j["coords"] = std::move(coords);
    return j;
}

Json condition_json(const ConditionReport& rep) {
    Json j;
    j["separation"] = {{"verdict", verdict3_name(rep.separation.v)},
                       {"distance_cells", json_extended(rep.separation.distance_cells)},
                       {"evidence", rep.separation.evidence}};
    Json ed = {{"verdict", verdict3_name(rep.empty_direction.v)},
               {"evidence", rep.empty_direction.evidence}};
    if (rep.empty_direction.v == Verdict3::Holds) ed["alpha"] = rep.empty_direction.alpha;
    j["empty_direction"] = std::move(ed);
    Json cr = {{"verdict", verdict3_name(rep.cross_retract.v)},
               {"evidence", rep.cross_retract.evidence}};
    if (rep.cross_retract.v == Verdict3::Holds) {
        cr["alpha"] = rep.cross_retract.alpha;
        cr["theta"] = rep.cross_retract.theta;
    }
    j["cross_retract"] = std::move(cr);
    return j;
}

}  // namespace

Json build_report(const RunConfig& config, const Tower& tower, const Verdict& verdict,
                  const std::vector<FiberPoint>& fibers) {
    Json report;

    Json meta;
    meta["tool"] = "calkin-lift";
    meta["version"] = "0.1.0";
    Json cfg;
    cfg["input"] = config.input_path;
    cfg["depth"] = config.depth;
    cfg["theta_cells"] = config.theta_cells;
    cfg["u_cells_per_unit"] = config.u_cells_per_unit;
    cfg["fiber_count"] = config.fiber_count;
    cfg["fiber_depth"] = config.fiber_depth;
    cfg["seed"] = config.seed;
    cfg["assume_normal_lifts"] = config.assume_normal_lifts;
    Json ov = Json::array();
    for (const auto& [k, val] : config.threshold_overrides)
        ov.push_back(Json{{"key", k}, {"value", val}});
    cfg["threshold_overrides"] = std::move(ov);
    meta["config"] = std::move(cfg);
    report["meta"] = std::move(meta);

    Json spec_echo;
    spec_echo["name"] = tower.spec.name;
    Json prims = Json::array();
    for (const auto& p : tower.spec.primitives) prims.push_back(primitive_json(p));
    spec_echo["primitives"] = std::move(prims);
    spec_echo["zeta"] = tower.bounds.zeta;
    spec_echo["eta"] = json_extended(tower.bounds.eta);
    report["spec_echo"] = std::move(spec_echo);

    Json summary;
    summary["depth"] = tower.depth;
    bool finite = true;
    Json sizes = Json::array();
    for (const Level& lv : tower.levels) {
        finite = finite && lv.finite_points.has_value();
        if (lv.finite_points) sizes.push_back(lv.finite_points->size());
    }
    summary["all_levels_finite"] = finite;
    if (finite) summary["level_sizes"] = std::move(sizes);
    report["tower_summary"] = std::move(summary);

    Json levels = Json::array();
    for (const Level& lv : tower.levels) {
        Json j;
        j["n"] = lv.n;
        j["ext_rank"] = lv.ext_rank;
        if (lv.finite_points) j["finite_count"] = lv.finite_points->size();
        j["max_modulus"] = lv.max_modulus();
        j["occupied_cells"] = lv.region.occupied_count();
        Json samples = Json::array();
        for (auto s : lv.component_samples) samples.push_back(json_complex(s));
        j["component_samples"] = std::move(samples);
        j["conditions"] = condition_json(verdict.per_level[lv.n]);
        levels.push_back(std::move(j));
    }
    report["levels"] = std::move(levels);

    Json kernel;
    kernel["status"] = kernel_status_name(verdict.kernel.status);
    kernel["note"] = verdict.kernel.note;
    if (verdict.kernel.status == KernelStatus::Obstructed) {
        kernel["witness"] = {{"lambda", json_complex(verdict.kernel.witness_lambda)},
                             {"level", verdict.kernel.witness_level},
                             {"index", verdict.kernel.witness_index}};
    } else {
        kernel["witness"] = nullptr;
    }
    Json ktable = Json::array();
    for (const KernelSample& s : verdict.kernel.samples)
        ktable.push_back(Json{{"n", s.n}, {"lambda", json_complex(s.lambda)}, {"index", s.index}});
    kernel["samples"] = std::move(ktable);
    report["kernel"] = std::move(kernel);

    Json continuity;
    continuity["eta_finite"] = verdict.continuity.eta_finite;
    Json nec = {{"verdict", verdict3_name(verdict.continuity.necessary.v)},
                {"evidence", verdict.continuity.necessary.evidence}};
    nec["witness"] = verdict.continuity.necessary.witness
                         ? fiber_json(*verdict.continuity.necessary.witness)
                         : Json(nullptr);
    continuity["necessary"] = std::move(nec);
    Json o2n = {{"verdict", verdict3_name(verdict.continuity.sufficient.v)},
                {"evidence", verdict.continuity.sufficient.evidence}};
    if (verdict.continuity.sufficient.v == Verdict3::Holds) o2n["C"] = verdict.continuity.sufficient.C;
    Json dvals = Json::array();
    for (double d : verdict.continuity.sufficient.d) dvals.push_back(d);
    o2n["d"] = std::move(dvals);
    continuity["sufficient_o2n"] = std::move(o2n);
    Json quasi = Json::array();
    for (const QuasiUniformResult& q : verdict.continuity.quasi) {
        Json jq = {{"probe", q.label},
                   {"verdict", verdict3_name(q.v)},
                   {"evidence", q.evidence}};
        Json idx = Json::array();
        for (int i : q.indices) idx.push_back(i);
        jq["indices"] = std::move(idx);
        jq["witness"] = q.witness ? fiber_json(*q.witness) : Json(nullptr);
        quasi.push_back(std::move(jq));
    }
    continuity["quasi_uniform"] = std::move(quasi);
    continuity["fiber_count"] = fibers.size();
    report["continuity"] = std::move(continuity);

    Json vj;
    vj["classification"] = classification_name(verdict.classification);
    vj["route"] = route_name(verdict.route);
    vj["kernel_status"] = kernel_status_name(verdict.kernel.status);
    vj["perfectness"] = {{"value", ternary_name(verdict.perfectness.value)},
                         {"reason", verdict.perfectness.reason}};
    Json hj;
    hj["class"] = homotopy_name(verdict.homotopy.cls);
    if (verdict.homotopy.cls == HomotopyClass::MCircles) hj["m"] = verdict.homotopy.m;
    vj["homotopy_class"] = std::move(hj);
    vj["milnor_special"] = milnor_name(milnor_special(verdict.homotopy));
    vj["certified_from_level"] =
        verdict.certified_from_level ? Json(*verdict.certified_from_level) : Json(nullptr);
    vj["bounded_im"] = {{"bounded", verdict.bounded_im.bounded},
                        {"bound", json_extended(verdict.bounded_im.bound)}};
    vj["halfline_sections"] = {{"verdict", verdict3_name(verdict.halfline_sections.v)},
                               {"evidence", verdict.halfline_sections.evidence}};
    Json blocking = Json::array();
    for (const std::string& b : verdict.blocking) blocking.push_back(b);
    vj["blocking"] = std::move(blocking);
    vj["stability_note"] = verdict.stability_note;
    report["verdict"] = std::move(vj);

    validate_report(report);
    return report;
}

namespace {

void need(const Json& j, const char* key, const char* where) {
    if (!j.contains(key))
        throw std::runtime_error(std::string("report schema: missing '") + key + "' in " + where);
}

}  // namespace

void validate_report(const Json& report) {
    for (const char* key : {"meta", "spec_echo", "tower_summary", "levels", "kernel",
                            "continuity", "verdict"})
        need(report, key, "top level");
    if (!report["levels"].is_array()) throw std::runtime_error("report schema: levels not an array");
    for (const Json& lv : report["levels"]) {
        need(lv, "n", "level");
        need(lv, "ext_rank", "level");
        need(lv, "conditions", "level");
        for (const char* key : {"separation", "empty_direction", "cross_retract"})
            need(lv["conditions"], key, "conditions");
    }
    need(report["kernel"], "status", "kernel");
    need(report["continuity"], "necessary", "continuity");
    need(report["continuity"], "sufficient_o2n", "continuity");
    need(report["continuity"], "quasi_uniform", "continuity");
    const Json& v = report["verdict"];
    for (const char* key : {"classification", "route", "kernel_status", "perfectness",
                            "homotopy_class", "certified_from_level", "blocking"})
        need(v, key, "verdict");
    std::string cls = v["classification"].get<std::string>();
    if (cls != "LIFT_EXISTS_C0" && cls != "LIFT_EXISTS_DYADIC" && cls != "OBSTRUCTED_INDEX" &&
        cls != "INCONCLUSIVE")
        throw std::runtime_error("report schema: bad classification " + cls);
    if (cls == "OBSTRUCTED_INDEX" && report["kernel"]["witness"].is_null())
        throw std::runtime_error("report schema: obstruction without a witness");
}

}  // namespace calkin
