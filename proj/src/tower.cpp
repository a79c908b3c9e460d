#include "calkin/tower.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <sstream>

namespace calkin {

const char* ternary_name(Ternary v) {
    switch (v) {
        case Ternary::Yes: return "yes";
        case Ternary::No: return "no";
        case Ternary::Unknown: return "unknown";
    }
    return "unknown";
}

double Level::max_modulus() const {
    if (finite_points) {
        double m = 0;
        for (auto z : *finite_points) m = std::max(m, std::abs(z));
        return m;
    }
    for (long j = region.j_hi(); j >= region.j_lo(); --j)
        for (long k = 0; k < region.theta_cells(); ++k)
            if (region.at(j, k)) return std::exp(region.u_of_row(j));
    return 0;
}

namespace {

Level build_level(const SpectrumSpec& spec, int n, const ResolutionParams& res) {
    Level lv;
    lv.n = n;
    lv.region = rasterize_level(spec, n, res);
    lv.antipodal = antipodal_set(lv.region);
    lv.finite_points = exact_level_points(spec, n);
    if (lv.finite_points) {
        // A finite set never bounds a complement component.
        lv.ext_rank = 0;
    } else {
        ComponentReport rep = bounded_complement_components(lv.region);
        lv.ext_rank = rep.count;
        lv.component_samples = std::move(rep.samples);
    }
    lv.sections = row_bands(lv.region);
    return lv;
}

}  // namespace

Tower build_tower(const SpectrumSpec& spec, int depth, const ResolutionParams& res,
                  int max_threads) {
    validate(spec);
    if (depth < 1) throw TowerError("depth must be >= 1");
    Tower t;
    t.spec = spec;
    t.depth = depth;
    t.bounds = strip_bounds(spec);
    t.res = res;
    t.levels.resize(depth + 1);

    if (max_threads > 1) {
        std::vector<std::future<Level>> futs(depth + 1);
        int inflight = 0;
        for (int n = 0; n <= depth; ++n) {
            futs[n] = std::async(std::launch::async, build_level, std::cref(spec), n, std::cref(res));
            if (++inflight >= max_threads) {
                for (int m = 0; m <= n; ++m)
                    if (futs[m].valid()) { t.levels[m] = futs[m].get(); --inflight; }
            }
        }
        for (int n = 0; n <= depth; ++n)
            if (futs[n].valid()) t.levels[n] = futs[n].get();
    } else {
        for (int n = 0; n <= depth; ++n) t.levels[n] = build_level(spec, n, res);
    }

    // Squaring consistency: the index-space image of level n+1 must land
    // within one cell of level n, and conversely every occupied cell of
    // level n must be hit within one cell.
    for (int n = 0; n < depth; ++n) {
        CylinderRaster img = squared_image(t.levels[n + 1].region);
        if (!within_one_cell(img, t.levels[n].region))
            throw TowerError("squaring image of level " + std::to_string(n + 1) +
                             " leaves level " + std::to_string(n) +
                             " (resolution too coarse for this spectrum)");
        if (!within_one_cell(t.levels[n].region, dilate8(img)))
            throw TowerError("squaring image of level " + std::to_string(n + 1) +
                             " does not cover level " + std::to_string(n));
    }
    return t;
}

// ---------------------------------------------------------------------------
// Fiber sampling

namespace {

std::vector<std::complex<double>> sample_spectrum_points(const SpectrumSpec& spec, int count,
                                                         std::mt19937_64& rng) {
    StripBounds b = strip_bounds(spec);
    double re_floor = (b.eta == -kInf) ? b.zeta - 4.0 : b.eta;
    std::vector<std::complex<double>> out;
    auto push = [&](double re, double im) {
        if (!std::isfinite(re) || !std::isfinite(im)) return;
        std::complex<double> z(re, im);
        for (auto w : out)
            if (std::abs(w - z) < 1e-12) return;
        out.push_back(z);
    };
    double im_span = 4 * kTwoPi;
    for (const auto& p : spec.primitives) {
        std::visit(
            [&](const auto& q) {
                using T = std::decay_t<decltype(q)>;
                if constexpr (std::is_same_v<T, PointPrim>) {
                    push(q.re, q.im);
                } else if constexpr (std::is_same_v<T, VSegmentPrim>) {
                    double lo = (q.im_lo == -kInf) ? -im_span : q.im_lo;
                    double hi = (q.im_hi == kInf) ? im_span : q.im_hi;
                    push(q.re, lo);
                    push(q.re, hi);
                    push(q.re, 0.5 * (lo + hi));
                } else if constexpr (std::is_same_v<T, HSegmentPrim>) {
                    double lo = (q.re_lo == -kInf) ? re_floor : q.re_lo;
                    push(lo, q.im);
                    push(q.re_hi, q.im);
                    push(0.5 * (lo + q.re_hi), q.im);
                } else if constexpr (std::is_same_v<T, RectPrim>) {
                    double rlo = (q.re_lo == -kInf) ? re_floor : q.re_lo;
                    double ilo = (q.im_lo == -kInf) ? -im_span : q.im_lo;
                    double ihi = (q.im_hi == kInf) ? im_span : q.im_hi;
                    push(rlo, ilo);
                    push(rlo, ihi);
                    push(q.re_hi, ilo);
                    push(q.re_hi, ihi);
                    push(0.5 * (rlo + q.re_hi), 0.5 * (ilo + ihi));
                } else if constexpr (std::is_same_v<T, VLatticePrim>) {
                    for (int k = 0; k <= 4; ++k) {
                        push(q.re, q.im_base + k * q.im_step);
                        if (k) push(q.re, q.im_base - k * q.im_step);
                    }
                } else if constexpr (std::is_same_v<T, VLinePrim>) {
                    push(q.re, 0);
                    for (int k = 1; k <= 3; ++k) {
                        push(q.re, k * kPi);
                        push(q.re, -k * kPi);
                    }
                } else if constexpr (std::is_same_v<T, PeriodicBandPrim>) {
                    double rlo = (q.re_lo == -kInf) ? re_floor : q.re_lo;
                    for (int k = -1; k <= 1; ++k)
                        for (auto [a, bb] : q.im_intervals) {
                            push(rlo, a + k * q.period);
                            push(q.re_hi, bb + k * q.period);
                            push(q.re_hi, 0.5 * (a + bb) + k * q.period);
                        }
                }
            },
            p);
    }
    // Top up with uniform draws inside primitive boxes.
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    size_t prim_count = spec.primitives.size();
    int guard = 0;
    while (out.size() < static_cast<size_t>(count) && guard++ < 64 * count) {
        const auto& p = spec.primitives[rng() % prim_count];
        Extent re = re_extent(p), im = im_extent(p);
        double rlo = (re.lo == -kInf) ? re_floor : re.lo;
        double ilo = (im.lo == -kInf) ? -im_span : im.lo;
        double ihi = (im.hi == kInf) ? im_span : im.hi;
        double rr = rlo + unit(rng) * (re.hi - rlo);
        double ii = ilo + unit(rng) * (ihi - ilo);
        // Snap to the primitive's actual geometry.
        std::visit(
            [&](const auto& q) {
                using T = std::decay_t<decltype(q)>;
                if constexpr (std::is_same_v<T, PointPrim>) {
                    rr = q.re; ii = q.im;
                } else if constexpr (std::is_same_v<T, VSegmentPrim>) {
                    rr = q.re;
                } else if constexpr (std::is_same_v<T, HSegmentPrim>) {
                    ii = q.im;
                } else if constexpr (std::is_same_v<T, VLatticePrim>) {
                    rr = q.re;
                    ii = q.im_base + std::round((ii - q.im_base) / q.im_step) * q.im_step;
                } else if constexpr (std::is_same_v<T, VLinePrim>) {
                    rr = q.re;
                } else if constexpr (std::is_same_v<T, PeriodicBandPrim>) {
                    double t = std::fmod(ii - q.im_intervals[0].first, q.period);
                    if (t < 0) t += q.period;
                    auto [a, bb] = q.im_intervals[0];
                    ii = ii - t + std::min(t, bb - a);
                }
            },
            p);
        push(rr, ii);
    }
    if (out.size() > static_cast<size_t>(count)) out.resize(count);
    return out;
}

std::string eps_name(int kind) {
    switch (kind) {
        case 0: return "alternating";
        case 1: return "all-ones";
        default: return "random-" + std::to_string(kind - 2);
    }
}

}  // namespace

std::vector<FiberPoint> sample_fibers(const Tower& t, int canonical_count, int twisted_count,
                                      uint64_t seed, int depth) {
    if (depth < 0) depth = t.depth;
    std::mt19937_64 rng(seed);
    std::vector<FiberPoint> fibers;

    auto zs = sample_spectrum_points(t.spec, std::max(canonical_count, twisted_count), rng);
    for (int i = 0; i < canonical_count && i < static_cast<int>(zs.size()); ++i) {
        FiberPoint f;
        std::ostringstream tag;
        tag << "canonical z=(" << zs[i].real() << "," << zs[i].imag() << ")";
        f.provenance = tag.str();
        for (int n = 0; n <= depth; ++n)
            f.coords.push_back(std::exp(std::ldexp(1.0, -n) * zs[i]));
        fibers.push_back(std::move(f));
    }

    // Twisted fibers: at each step pick among the square roots that still
    // lie in the next level set.
    int made = 0;
    for (int i = 0; made < twisted_count && i < static_cast<int>(zs.size()); ++i) {
        int per_base = 2 + 8;  // alternating, all-ones, 8 pseudorandom
        for (int kind = 0; kind < per_base && made < twisted_count; ++kind, ++made) {
            std::mt19937_64 eps_rng(seed ^ (0x9e3779b97f4a7c15ull * (i * 16 + kind + 1)));
            FiberPoint f;
            std::complex<double> x = std::exp(zs[i]);
            f.coords.push_back(x);
            for (int n = 0; n < depth; ++n) {
                std::complex<double> r0 = std::sqrt(x);
                std::complex<double> r1 = -r0;
                bool ok0 = level_contains(t.spec, n + 1, r0, kFiberTolExact * 10);
                bool ok1 = level_contains(t.spec, n + 1, r1, kFiberTolExact * 10);
                int eps;
                switch (kind) {
                    case 0: eps = n % 2; break;
                    case 1: eps = 1; break;
                    default: eps = static_cast<int>(eps_rng() & 1); break;
                }
                std::complex<double> next;
                if (ok0 && ok1) next = eps ? r1 : r0;
                else if (ok1) next = r1;
                else next = r0;
                f.coords.push_back(next);
                x = next;
            }
            std::ostringstream tag;
            tag << "twisted base=(" << std::exp(zs[i]).real() << "," << std::exp(zs[i]).imag()
                << ") eps=" << eps_name(kind);
            f.provenance = tag.str();
            fibers.push_back(std::move(f));
        }
    }
    return fibers;
}

// ---------------------------------------------------------------------------
// Perfectness of the inverse limit

namespace {

bool raster_level_perfect(const CylinderRaster& r) {
    // No occupied cell may be isolated at feature scale (3-cell radius).
    for (long j = r.j_lo(); j <= r.j_hi(); ++j)
        for (long k = 0; k < r.theta_cells(); ++k) {
            if (!r.at(j, k)) continue;
            bool neighbor = false;
            for (long dj = -3; dj <= 3 && !neighbor; ++dj)
                for (long dk = -3; dk <= 3 && !neighbor; ++dk) {
                    if (dj == 0 && dk == 0) continue;
                    neighbor = r.at(j + dj, k + dk);
                }
            if (!neighbor) return false;
        }
    return true;
}

}  // namespace

PerfectnessVerdict is_delta_perfect(const Tower& t) {
    bool all_finite = true, any_finite = false;
    for (const Level& lv : t.levels) {
        all_finite = all_finite && lv.finite_points.has_value();
        any_finite = any_finite || lv.finite_points.has_value();
    }
    if (all_finite) {
        std::vector<size_t> sizes;
        for (const Level& lv : t.levels) sizes.push_back(lv.finite_points->size());
        bool all_single = std::all_of(sizes.begin(), sizes.end(), [](size_t s) { return s == 1; });
        if (all_single)
            return {Ternary::No, "every level is a single point; the inverse limit is a point"};
        bool strictly_increasing = true;
        for (size_t i = 0; i + 1 < sizes.size(); ++i)
            strictly_increasing = strictly_increasing && sizes[i + 1] > sizes[i];
        if (strictly_increasing)
            return {Ternary::Yes,
                    "finite levels with strictly growing cardinality (" + std::to_string(sizes.front()) +
                        " -> " + std::to_string(sizes.back()) + "): Cantor-type branching"};
        if (sizes.back() == sizes[sizes.size() - 2])
            return {Ternary::No, "finite levels stabilize at " + std::to_string(sizes.back()) +
                                     " points; branching stops"};
        return {Ternary::Unknown, "finite levels with irregular growth"};
    }
    if (any_finite)
        return {Ternary::Unknown, "mixed finite and continuum levels"};
    for (const Level& lv : t.levels)
        if (!raster_level_perfect(lv.region))
            return {Ternary::Unknown,
                    "level " + std::to_string(lv.n) + " has isolated cells at feature scale"};
    return {Ternary::Yes, "every level is perfect at feature scale and the connecting maps are onto"};
}

}  // namespace calkin
