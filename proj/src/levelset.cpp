#include "calkin/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace calkin {

namespace {
constexpr double kMergeEps = 1e-12;
constexpr long long kMaxRationalDen = 1 << 16;
}  // namespace

double wrap_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0) t += kTwoPi;
    if (t >= kTwoPi) t = 0;
    return t;
}

double angle_gap(double a, double b) {
    double d = std::fabs(wrap_angle(a) - wrap_angle(b));
    return std::min(d, kTwoPi - d);
}

double arc_distance(double theta, const ArcSeg& a) {
    if (a.length() >= kTwoPi) return 0;
    double t = wrap_angle(theta - a.lo);  // position relative to arc start
    if (t <= a.length()) return 0;
    return std::min(t - a.length(), kTwoPi - t);
}

std::vector<ArcSeg> merge_arcs(std::vector<ArcSeg> arcs, bool* covers_all) {
    if (covers_all) *covers_all = false;
    std::vector<ArcSeg> cut;
    for (ArcSeg a : arcs) {
        if (a.length() >= kTwoPi - kMergeEps) {
            if (covers_all) *covers_all = true;
            return {ArcSeg{0, kTwoPi}};
        }
        double lo = wrap_angle(a.lo);
        double hi = lo + a.length();
        if (hi > kTwoPi) {
            cut.push_back({lo, kTwoPi});
            cut.push_back({0, hi - kTwoPi});
        } else {
            cut.push_back({lo, hi});
        }
    }
    if (cut.empty()) return {};
    std::sort(cut.begin(), cut.end(), [](const ArcSeg& x, const ArcSeg& y) { return x.lo < y.lo; });
    std::vector<ArcSeg> merged;
    for (const ArcSeg& a : cut) {
        if (!merged.empty() && a.lo <= merged.back().hi + kMergeEps) {
            merged.back().hi = std::max(merged.back().hi, a.hi);
        } else {
            merged.push_back(a);
        }
    }
    // Join across the wrap point.
    if (merged.size() > 1 && merged.front().lo <= kMergeEps &&
        merged.back().hi >= kTwoPi - kMergeEps) {
        merged.front().lo = merged.back().lo - kTwoPi;
        merged.pop_back();
    }
    double total = 0;
    for (const ArcSeg& a : merged) total += a.length();
    if (total >= kTwoPi - 1e-9) {
        if (covers_all) *covers_all = true;
        return {ArcSeg{0, kTwoPi}};
    }
    // Canonical form: lo in [0, 2pi).
    for (ArcSeg& a : merged)
        if (a.lo < 0) { a.lo += kTwoPi; a.hi += kTwoPi; }
    std::sort(merged.begin(), merged.end(), [](const ArcSeg& x, const ArcSeg& y) { return x.lo < y.lo; });
    return merged;
}

ThetaSet theta_union(const ThetaSet& a, const ThetaSet& b) {
    if (a.full() || b.full()) return ThetaSet{ThetaSet::Kind::Full, {}, {}};
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.kind == ThetaSet::Kind::Points && b.kind == ThetaSet::Kind::Points) {
        ThetaSet out;
        out.kind = ThetaSet::Kind::Points;
        out.points = a.points;
        for (double p : b.points) {
            bool dup = false;
            for (double q : out.points) dup = dup || angle_gap(p, q) < 1e-12;
            if (!dup) out.points.push_back(p);
        }
        std::sort(out.points.begin(), out.points.end());
        return out;
    }
    // Mixed arcs/points: promote points to degenerate arcs.
    std::vector<ArcSeg> arcs;
    auto add = [&](const ThetaSet& s) {
        for (const ArcSeg& x : s.arcs) arcs.push_back(x);
        for (double p : s.points) arcs.push_back({wrap_angle(p), wrap_angle(p)});
    };
    add(a);
    add(b);
    ThetaSet out;
    bool covers = false;
    out.arcs = merge_arcs(std::move(arcs), &covers);
    out.kind = covers ? ThetaSet::Kind::Full : ThetaSet::Kind::Arcs;
    if (covers) out.arcs.clear();
    return out;
}

bool theta_contains(const ThetaSet& s, double theta, double tol) {
    switch (s.kind) {
        case ThetaSet::Kind::Empty: return false;
        case ThetaSet::Kind::Full: return true;
        case ThetaSet::Kind::Arcs: {
            for (const ArcSeg& a : s.arcs)
                if (arc_distance(theta, a) <= tol) return true;
            return false;
        }
        case ThetaSet::Kind::Points: {
            for (double p : s.points)
                if (angle_gap(theta, p) <= tol) return true;
            return false;
        }
    }
    return false;
}

std::vector<ArcSeg> theta_gaps(const ThetaSet& s) {
    if (s.full()) return {};
    if (s.empty()) return {ArcSeg{0, kTwoPi}};
    std::vector<ArcSeg> arcs = s.arcs;
    for (double p : s.points) arcs.push_back({wrap_angle(p), wrap_angle(p)});
    bool covers = false;
    arcs = merge_arcs(std::move(arcs), &covers);
    if (covers) return {};
    std::vector<ArcSeg> gaps;
    for (size_t i = 0; i < arcs.size(); ++i) {
        double from = arcs[i].hi;
        double to = (i + 1 < arcs.size()) ? arcs[i + 1].lo : arcs[0].lo + kTwoPi;
        if (to - from > kMergeEps) gaps.push_back({wrap_angle(from), wrap_angle(from) + (to - from)});
    }
    return gaps;
}

ThetaSet rotate(const ThetaSet& s, double delta) {
    ThetaSet out = s;
    for (ArcSeg& a : out.arcs) {
        double len = a.length();
        a.lo = wrap_angle(a.lo + delta);
        a.hi = a.lo + len;
    }
    for (double& p : out.points) p = wrap_angle(p + delta);
    std::sort(out.points.begin(), out.points.end());
    if (out.kind == ThetaSet::Kind::Arcs) {
        bool covers = false;
        out.arcs = merge_arcs(std::move(out.arcs), &covers);
        if (covers) { out.kind = ThetaSet::Kind::Full; out.arcs.clear(); }
    }
    return out;
}

namespace {

bool contains_arc(const ThetaSet& s, const ArcSeg& a, double tol) {
    if (s.full()) return true;
    if (a.length() <= 2 * tol) return theta_contains(s, 0.5 * (a.lo + a.hi), tol);
    for (const ArcSeg& b : s.arcs) {
        double rel = wrap_angle(a.lo - b.lo);
        if (rel <= tol) rel = 0;  // align the start within tolerance
        if (rel + a.length() <= b.length() + tol) return true;
    }
    return false;
}

}  // namespace

bool theta_symmetric_under_pi(const ThetaSet& s, double tol) {
    switch (s.kind) {
        case ThetaSet::Kind::Empty:
        case ThetaSet::Kind::Full: return true;
        case ThetaSet::Kind::Points: {
            for (double p : s.points)
                if (!theta_contains(s, p + kPi, tol)) return false;
            return true;
        }
        case ThetaSet::Kind::Arcs: {
            // Rotation preserves total length, so one-sided containment
            // of every rotated arc already forces equality.
            for (const ArcSeg& a : s.arcs) {
                ArcSeg r{wrap_angle(a.lo + kPi), wrap_angle(a.lo + kPi) + a.length()};
                if (!contains_arc(s, r, tol)) return false;
            }
            return true;
        }
    }
    return true;
}

std::optional<std::pair<long long, long long>> as_rational(double t, long long max_q, double tol) {
    if (!std::isfinite(t)) return std::nullopt;
    double x = t;
    long long p0 = 1, q0 = 0, p1 = static_cast<long long>(std::floor(x)), q1 = 1;
    x -= std::floor(x);
    for (int it = 0; it < 64; ++it) {
        if (std::llabs(q1) <= max_q && std::fabs(t - static_cast<double>(p1) / static_cast<double>(q1)) <= tol) {
            long long p = p1, q = q1;
            if (q < 0) { p = -p; q = -q; }
            long long g = std::gcd(std::llabs(p), q);
            if (g > 1) { p /= g; q /= g; }
            return std::make_pair(p, q);
        }
        if (x < 1e-18) break;
        x = 1.0 / x;
        double a = std::floor(x);
        if (a > 4e18) break;
        long long ai = static_cast<long long>(a);
        long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        if (q1 > max_q) break;
        x -= a;
    }
    if (q1 != 0 && q1 <= max_q && std::fabs(t - static_cast<double>(p1) / static_cast<double>(q1)) <= tol) {
        long long p = p1, q = q1;
        long long g = std::gcd(std::llabs(p), q);
        if (g > 1) { p /= g; q /= g; }
        return std::make_pair(p, q);
    }
    return std::nullopt;
}

namespace {

ThetaSet interval_theta(double lo, double hi, double scale) {
    ThetaSet out;
    if (lo == -kInf || hi == kInf) {
        out.kind = ThetaSet::Kind::Full;
        return out;
    }
    double len = (hi - lo) * scale;
    if (len >= kTwoPi - kMergeEps) {
        out.kind = ThetaSet::Kind::Full;
        return out;
    }
    out.kind = ThetaSet::Kind::Arcs;
    double a = wrap_angle(lo * scale);
    out.arcs = {ArcSeg{a, a + len}};
    return out;
}

ThetaSet point_theta(double im, double scale) {
    ThetaSet out;
    out.kind = ThetaSet::Kind::Points;
    out.points = {wrap_angle(im * scale)};
    return out;
}

ThetaSet lattice_theta(double base, double step, double scale) {
    ThetaSet out;
    auto pq = as_rational(step * scale / kTwoPi, kMaxRationalDen, 1e-12);
    if (!pq) {
        out.kind = ThetaSet::Kind::Full;  // dense orbit; the closure is the circle
        return out;
    }
    long long q = pq->second;
    out.kind = ThetaSet::Kind::Points;
    out.points.reserve(static_cast<size_t>(q));
    double b = wrap_angle(base * scale);
    for (long long j = 0; j < q; ++j)
        out.points.push_back(wrap_angle(b + kTwoPi * static_cast<double>(j) / static_cast<double>(q)));
    std::sort(out.points.begin(), out.points.end());
    return out;
}

ThetaSet periodic_theta(const PeriodicBandPrim& p, double scale) {
    ThetaSet out;
    auto pq = as_rational(p.period * scale / kTwoPi, kMaxRationalDen, 1e-12);
    if (!pq) {
        out.kind = ThetaSet::Kind::Full;
        return out;
    }
    long long q = pq->second;
    std::vector<ArcSeg> arcs;
    for (auto [a, b] : p.im_intervals) {
        double len = (b - a) * scale;
        if (len >= kTwoPi - kMergeEps) {
            out.kind = ThetaSet::Kind::Full;
            return out;
        }
        double lo = wrap_angle(a * scale);
        for (long long j = 0; j < q; ++j) {
            double shift = kTwoPi * static_cast<double>(j) / static_cast<double>(q);
            arcs.push_back({wrap_angle(lo + shift), wrap_angle(lo + shift) + len});
        }
    }
    bool covers = false;
    out.arcs = merge_arcs(std::move(arcs), &covers);
    out.kind = covers ? ThetaSet::Kind::Full : ThetaSet::Kind::Arcs;
    if (covers) out.arcs.clear();
    return out;
}

}  // namespace

std::vector<LevelSlab> level_slabs(const SpectrumSpec& spec, int n) {
    double scale = std::ldexp(1.0, -n);
    std::vector<LevelSlab> out;
    for (const auto& p : spec.primitives) {
        LevelSlab slab;
        Extent re = re_extent(p);
        slab.u_lo = (re.lo == -kInf) ? -kInf : re.lo * scale;
        slab.u_hi = re.hi * scale;
        std::visit(
            [&](const auto& q) {
                using T = std::decay_t<decltype(q)>;
                if constexpr (std::is_same_v<T, PointPrim>) {
                    slab.theta = point_theta(q.im, scale);
                } else if constexpr (std::is_same_v<T, VSegmentPrim>) {
                    slab.theta = interval_theta(q.im_lo, q.im_hi, scale);
                } else if constexpr (std::is_same_v<T, HSegmentPrim>) {
                    slab.theta = point_theta(q.im, scale);
                } else if constexpr (std::is_same_v<T, RectPrim>) {
                    slab.theta = interval_theta(q.im_lo, q.im_hi, scale);
                } else if constexpr (std::is_same_v<T, VLatticePrim>) {
                    slab.theta = lattice_theta(q.im_base, q.im_step, scale);
                } else if constexpr (std::is_same_v<T, VLinePrim>) {
                    slab.theta.kind = ThetaSet::Kind::Full;
                } else if constexpr (std::is_same_v<T, PeriodicBandPrim>) {
                    slab.theta = periodic_theta(q, scale);
                }
            },
            p);
        out.push_back(std::move(slab));
    }
    return out;
}

ThetaSet level_theta_coverage(const SpectrumSpec& spec, int n) {
    ThetaSet cov;
    for (const LevelSlab& s : level_slabs(spec, n)) cov = theta_union(cov, s.theta);
    return cov;
}

std::optional<std::vector<std::complex<double>>> exact_level_points(const SpectrumSpec& spec, int n) {
    std::vector<std::complex<double>> pts;
    for (const LevelSlab& s : level_slabs(spec, n)) {
        if (s.u_lo != s.u_hi) return std::nullopt;
        if (s.theta.kind != ThetaSet::Kind::Points) return std::nullopt;
        double r = std::exp(s.u_hi);
        for (double th : s.theta.points)
            pts.push_back(std::polar(r, th));
        if (pts.size() > (1u << 20)) return std::nullopt;
    }
    std::sort(pts.begin(), pts.end(), [](std::complex<double> a, std::complex<double> b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<std::complex<double>> dedup;
    for (auto z : pts) {
        if (dedup.empty() || std::abs(z - dedup.back()) > 1e-12 * std::max(1.0, std::abs(z)))
            dedup.push_back(z);
    }
    return dedup;
}

std::optional<std::vector<RadialSection>> finite_radial_sections(const SpectrumSpec& spec, int n) {
    std::vector<double> res;
    for (const auto& p : spec.primitives) {
        Extent e = re_extent(p);
        if (e.lo != e.hi) return std::nullopt;
        res.push_back(e.lo);
    }
    std::sort(res.begin(), res.end());
    res.erase(std::unique(res.begin(), res.end()), res.end());
    double scale = std::ldexp(1.0, -n);
    std::vector<RadialSection> out;
    for (double s : res) {
        RadialSection sec;
        sec.s = s;
        sec.u = s * scale;
        sec.theta = section_theta_at_level(spec, n, s);
        out.push_back(std::move(sec));
    }
    return out;
}

ThetaSet section_theta_at_level(const SpectrumSpec& spec, int n, double s) {
    auto slabs = level_slabs(spec, n);
    ThetaSet out;
    for (size_t i = 0; i < slabs.size(); ++i) {
        Extent e = re_extent(spec.primitives[i]);
        if (s >= e.lo && s <= e.hi) out = theta_union(out, slabs[i].theta);
    }
    return out;
}

bool level_contains(const SpectrumSpec& spec, int n, std::complex<double> z, double tol) {
    if (std::abs(z) == 0) return strip_bounds(spec).eta == -kInf;
    double u = std::log(std::abs(z));
    double th = wrap_angle(std::arg(z));
    for (const LevelSlab& s : level_slabs(spec, n)) {
        double du = 0;
        if (s.u_lo != -kInf && u < s.u_lo) du = s.u_lo - u;
        if (u > s.u_hi) du = u - s.u_hi;
        if (du > tol) continue;
        double dth = kTwoPi;
        switch (s.theta.kind) {
            case ThetaSet::Kind::Empty: continue;
            case ThetaSet::Kind::Full: dth = 0; break;
            case ThetaSet::Kind::Arcs:
                for (const ArcSeg& a : s.theta.arcs) dth = std::min(dth, arc_distance(th, a));
                break;
            case ThetaSet::Kind::Points:
                for (double p : s.theta.points) dth = std::min(dth, angle_gap(th, p));
                break;
        }
        if (std::hypot(du, dth) <= tol) return true;
    }
    return false;
}

double max_dist_to_one(const SpectrumSpec& spec, int n) {
    double best = 0;
    for (const LevelSlab& s : level_slabs(spec, n)) {
        // theta* = point of the theta set closest to pi; |1 - x e^{i t}|
        // grows with -cos t, and is convex in x, so corners suffice.
        double theta_star;
        switch (s.theta.kind) {
            case ThetaSet::Kind::Empty: continue;
            case ThetaSet::Kind::Full: theta_star = kPi; break;
            case ThetaSet::Kind::Arcs: {
                double bestgap = kTwoPi;
                theta_star = 0;
                for (const ArcSeg& a : s.theta.arcs) {
                    double d = arc_distance(kPi, a);
                    if (d < bestgap) {
                        bestgap = d;
                        if (d == 0) theta_star = kPi;
                        else theta_star = (angle_gap(a.lo, kPi) < angle_gap(a.hi, kPi)) ? a.lo : a.hi;
                    }
                }
                break;
            }
            case ThetaSet::Kind::Points: {
                double bestgap = kTwoPi;
                theta_star = 0;
                for (double p : s.theta.points) {
                    double d = angle_gap(p, kPi);
                    if (d < bestgap) { bestgap = d; theta_star = p; }
                }
                break;
            }
        }
        double x_lo = (s.u_lo == -kInf) ? 0.0 : std::exp(s.u_lo);
        double x_hi = std::exp(s.u_hi);
        for (double x : {x_lo, x_hi}) {
            double v = std::sqrt(std::max(0.0, 1 - 2 * x * std::cos(theta_star) + x * x));
            best = std::max(best, v);
        }
    }
    return best;
}

bool theta_full_at_every_level(const Primitive& p) {
    struct V {
        bool operator()(const PointPrim&) const { return false; }
        bool operator()(const VSegmentPrim& q) const {
            return q.im_lo == -kInf || q.im_hi == kInf;
        }
        bool operator()(const HSegmentPrim&) const { return false; }
        bool operator()(const RectPrim&) const { return false; }
        bool operator()(const VLatticePrim& q) const {
            // Incommensurable steps stay dense under all halvings.
            return !as_rational(q.im_step / kTwoPi, kMaxRationalDen, 1e-12).has_value();
        }
        bool operator()(const VLinePrim&) const { return true; }
        bool operator()(const PeriodicBandPrim&) const { return false; }
    };
    return std::visit(V{}, p);
}

}  // namespace calkin
