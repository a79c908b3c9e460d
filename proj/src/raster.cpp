#include "calkin/raster.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <ostream>

namespace calkin {

namespace {
// Cells are marked when their center lies within half a cell diagonal of
// the set, measured in index space (u in rows, theta in columns).
constexpr double kMarkRadius = 0.70710678118654752440 + 1e-9;
}  // namespace

CylinderRaster::CylinderRaster(long j_lo, long j_hi, int theta_cells, double u_cell)
    : j_lo_(j_lo), j_hi_(j_hi), theta_cells_(theta_cells), u_cell_(u_cell) {
    cells_.assign(static_cast<size_t>(rows()) * theta_cells_, 0);
    deep_cols.assign(theta_cells_, 0);
}

bool CylinderRaster::empty() const {
    for (uint8_t c : cells_)
        if (c) return false;
    return true;
}

size_t CylinderRaster::occupied_count() const {
    size_t n = 0;
    for (uint8_t c : cells_) n += c ? 1 : 0;
    return n;
}

namespace {

struct GridPlan {
    long j_lo, j_hi;
    double cpu;  // effective u cells per unit at level 0
};

GridPlan plan_grid(const SpectrumSpec& spec, const ResolutionParams& res) {
    StripBounds b = strip_bounds(spec);
    double floor_u = b.eta;
    if (b.eta == -kInf) {
        floor_u = b.zeta - res.clip_depth;
        for (const auto& p : spec.primitives) {
            Extent e = re_extent(p);
            if (e.lo != -kInf) floor_u = std::min(floor_u, e.lo);
        }
    }
    double span = std::max(b.zeta - floor_u, 1e-9);
    double cpu = res.u_cells_per_unit;
    if (span * cpu > static_cast<double>(res.max_u_rows))
        cpu = static_cast<double>(res.max_u_rows) / span;
    GridPlan g;
    g.cpu = cpu;
    g.j_lo = static_cast<long>(std::floor(floor_u * cpu)) - 2;
    g.j_hi = static_cast<long>(std::ceil(b.zeta * cpu)) + 2;
    return g;
}

void mark_theta_range(CylinderRaster& r, long j, double c_lo, double c_hi) {
    int T = r.theta_cells();
    if (c_hi - c_lo >= T - 1e-9) {
        for (long k = 0; k < T; ++k) r.set(j, k);
        return;
    }
    long k0 = static_cast<long>(std::ceil(c_lo - 1e-9));
    long k1 = static_cast<long>(std::floor(c_hi + 1e-9));
    for (long k = k0; k <= k1; ++k) r.set(j, k);
}

void mark_deep_range(CylinderRaster& r, double c_lo, double c_hi) {
    int T = r.theta_cells();
    if (c_hi - c_lo >= T - 1e-9) {
        std::fill(r.deep_cols.begin(), r.deep_cols.end(), 1);
        return;
    }
    long k0 = static_cast<long>(std::ceil(c_lo - 1e-9));
    long k1 = static_cast<long>(std::floor(c_hi + 1e-9));
    for (long k = k0; k <= k1; ++k) r.deep_cols[r.wrap_col(k)] = 1;
}

void check_point_aliasing(const std::vector<LevelSlab>& slabs, double u_cell, double th_cell) {
    // Distinct exact points that fall into one cell would silently merge.
    std::vector<std::pair<long, double>> pts;  // (row, theta)
    for (const LevelSlab& s : slabs) {
        if (s.theta.kind != ThetaSet::Kind::Points || s.u_lo != s.u_hi) continue;
        long j = std::lround(s.u_hi / u_cell);
        for (double p : s.theta.points) pts.emplace_back(j, p);
    }
    std::sort(pts.begin(), pts.end());
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i].first != pts[i + 1].first) continue;
        double gap = angle_gap(pts[i].second, pts[i + 1].second);
        if (gap > 1e-12 && gap < th_cell)
            throw RasterError("distinct lattice points alias at this theta resolution (gap " +
                              std::to_string(gap) + " < cell " + std::to_string(th_cell) + ")");
    }
}

}  // namespace

CylinderRaster rasterize_level(const SpectrumSpec& spec, int n, const ResolutionParams& res) {
    if (res.theta_cells <= 0 || (res.theta_cells & (res.theta_cells - 1)) != 0)
        throw RasterError("theta_cells must be a positive power of two");
    if (res.u_cells_per_unit <= 0) throw RasterError("u_cells_per_unit must be positive");

    GridPlan g = plan_grid(spec, res);
    double u_cell = std::ldexp(1.0, -n) / g.cpu;
    CylinderRaster r(g.j_lo, g.j_hi, res.theta_cells, u_cell);
    r.contains_zero = (strip_bounds(spec).eta == -kInf);

    auto slabs = level_slabs(spec, n);
    check_point_aliasing(slabs, u_cell, r.theta_cell());

    double th_cell = r.theta_cell();
    for (const LevelSlab& s : slabs) {
        if (s.theta.kind == ThetaSet::Kind::Empty) continue;
        double a = (s.u_lo == -kInf) ? -kInf : s.u_lo / u_cell;  // row units
        double b = s.u_hi / u_cell;
        long j0 = (a == -kInf) ? g.j_lo
                               : std::max(g.j_lo, static_cast<long>(std::ceil(a - kMarkRadius - 1e-9)));
        long j1 = std::min(g.j_hi, static_cast<long>(std::floor(b + kMarkRadius + 1e-9)));
        for (long j = j0; j <= j1; ++j) {
            double du = 0;
            if (a != -kInf && j < a) du = a - j;
            if (j > b) du = j - b;
            if (du > kMarkRadius) continue;
            double dth = std::sqrt(std::max(0.0, kMarkRadius * kMarkRadius - du * du));
            switch (s.theta.kind) {
                case ThetaSet::Kind::Full:
                    mark_theta_range(r, j, 0, res.theta_cells);
                    break;
                case ThetaSet::Kind::Arcs:
                    for (const ArcSeg& arc : s.theta.arcs)
                        mark_theta_range(r, j, arc.lo / th_cell - dth, arc.hi / th_cell + dth);
                    break;
                case ThetaSet::Kind::Points:
                    for (double p : s.theta.points)
                        mark_theta_range(r, j, p / th_cell - dth, p / th_cell + dth);
                    break;
                default:
                    break;
            }
        }
        if (s.u_lo == -kInf) {
            switch (s.theta.kind) {
                case ThetaSet::Kind::Full:
                    mark_deep_range(r, 0, res.theta_cells);
                    break;
                case ThetaSet::Kind::Arcs:
                    for (const ArcSeg& arc : s.theta.arcs)
                        mark_deep_range(r, arc.lo / th_cell - kMarkRadius, arc.hi / th_cell + kMarkRadius);
                    break;
                case ThetaSet::Kind::Points:
                    for (double p : s.theta.points)
                        mark_deep_range(r, p / th_cell - kMarkRadius, p / th_cell + kMarkRadius);
                    break;
                default:
                    break;
            }
        }
    }
    return r;
}

CylinderRaster antipodal_set(const CylinderRaster& r) {
    CylinderRaster out(r.j_lo(), r.j_hi(), r.theta_cells(), r.u_cell());
    out.contains_zero = r.contains_zero;
    int half = r.theta_cells() / 2;
    for (long j = r.j_lo(); j <= r.j_hi(); ++j)
        for (long k = 0; k < r.theta_cells(); ++k)
            if (r.at(j, k) && r.at(j, k + half)) out.set(j, k);
    for (long k = 0; k < r.theta_cells(); ++k)
        out.deep_cols[k] = (r.deep_cols[k] && r.deep_cols[r.wrap_col(k + half)]) ? 1 : 0;
    return out;
}

namespace {

struct ColumnIndex {
    std::vector<std::vector<long>> rows;  // per column, sorted occupied row indices

    explicit ColumnIndex(const CylinderRaster& r) : rows(r.theta_cells()) {
        for (long j = r.j_lo(); j <= r.j_hi(); ++j)
            for (long k = 0; k < r.theta_cells(); ++k)
                if (r.at(j, k)) rows[k].push_back(j);
    }

    // Min |j - q| over occupied rows of column k; huge when column empty.
    double nearest_row_gap(int k, long q) const {
        const auto& v = rows[k];
        if (v.empty()) return 1e18;
        auto it = std::lower_bound(v.begin(), v.end(), q);
        double best = 1e18;
        if (it != v.end()) best = std::min(best, static_cast<double>(*it - q));
        if (it != v.begin()) best = std::min(best, static_cast<double>(q - *(it - 1)));
        return best;
    }
};

std::vector<std::pair<long, long>> boundary_cells(const CylinderRaster& r) {
    std::vector<std::pair<long, long>> out;
    for (long j = r.j_lo(); j <= r.j_hi(); ++j)
        for (long k = 0; k < r.theta_cells(); ++k) {
            if (!r.at(j, k)) continue;
            if (!r.at(j - 1, k) || !r.at(j + 1, k) || !r.at(j, k - 1) || !r.at(j, k + 1))
                out.emplace_back(j, k);
        }
    return out;
}

// Minimum of hypot(dj * uw, dk * tw) over occupied pairs (a-cell, b-cell).
double min_pair_distance(const CylinderRaster& a, const CylinderRaster& b, double uw, double tw) {
    if (!a.same_geometry(b)) throw RasterError("separation_distance: geometry mismatch");
    if (a.empty() || b.empty()) return kInf;
    ColumnIndex bi(b);
    auto cells = boundary_cells(a);
    int T = a.theta_cells();
    double best = kInf;
    for (auto [j, k] : cells) {
        for (int dk = 0; dk <= T / 2; ++dk) {
            double th_part = dk * tw;
            if (th_part >= best) break;
            for (int sgn : {1, -1}) {
                if (dk == 0 && sgn < 0) continue;
                int kk = static_cast<int>(a.wrap_col(k + sgn * dk));
                double dj = bi.nearest_row_gap(kk, j);
                double d = std::hypot(dj * uw, th_part);
                best = std::min(best, d);
                if (best == 0) return 0;
            }
        }
    }
    return best;
}

}  // namespace

double separation_distance(const CylinderRaster& a, const CylinderRaster& b) {
    return min_pair_distance(a, b, a.u_cell(), a.theta_cell());
}

double separation_cells(const CylinderRaster& a, const CylinderRaster& b) {
    return min_pair_distance(a, b, 1.0, 1.0);
}

CylinderRaster dilate8(const CylinderRaster& r) {
    CylinderRaster out(r.j_lo(), r.j_hi(), r.theta_cells(), r.u_cell());
    out.contains_zero = r.contains_zero;
    out.deep_cols = r.deep_cols;
    for (long j = r.j_lo(); j <= r.j_hi(); ++j)
        for (long k = 0; k < r.theta_cells(); ++k) {
            if (!r.at(j, k)) continue;
            for (long dj = -1; dj <= 1; ++dj)
                for (long dk = -1; dk <= 1; ++dk)
                    if (r.in_rows(j + dj)) out.set(j + dj, k + dk);
        }
    return out;
}

CylinderRaster difference(const CylinderRaster& a, const CylinderRaster& b) {
    if (!a.same_geometry(b)) throw RasterError("difference: geometry mismatch");
    CylinderRaster out(a.j_lo(), a.j_hi(), a.theta_cells(), a.u_cell());
    out.contains_zero = false;
    for (long j = a.j_lo(); j <= a.j_hi(); ++j)
        for (long k = 0; k < a.theta_cells(); ++k)
            if (a.at(j, k) && !b.at(j, k)) out.set(j, k);
    for (long k = 0; k < a.theta_cells(); ++k)
        out.deep_cols[k] = (a.deep_cols[k] && !b.deep_cols[k]) ? 1 : 0;
    return out;
}

bool rasters_intersect(const CylinderRaster& a, const CylinderRaster& b) {
    if (!a.same_geometry(b)) throw RasterError("intersect: geometry mismatch");
    for (long j = a.j_lo(); j <= a.j_hi(); ++j)
        for (long k = 0; k < a.theta_cells(); ++k)
            if (a.at(j, k) && b.at(j, k)) return true;
    return false;
}

CylinderRaster squared_image(const CylinderRaster& r) {
    CylinderRaster out(r.j_lo(), r.j_hi(), r.theta_cells(), 2 * r.u_cell());
    out.contains_zero = r.contains_zero;
    for (long j = r.j_lo(); j <= r.j_hi(); ++j)
        for (long k = 0; k < r.theta_cells(); ++k)
            if (r.at(j, k)) out.set(j, 2 * k);
    for (long k = 0; k < r.theta_cells(); ++k)
        if (r.deep_cols[k]) out.deep_cols[out.wrap_col(2 * k)] = 1;
    return out;
}

bool within_one_cell(const CylinderRaster& inner, const CylinderRaster& outer) {
    if (inner.j_lo() != outer.j_lo() || inner.j_hi() != outer.j_hi() ||
        inner.theta_cells() != outer.theta_cells())
        throw RasterError("within_one_cell: geometry mismatch");
    for (long j = inner.j_lo(); j <= inner.j_hi(); ++j)
        for (long k = 0; k < inner.theta_cells(); ++k) {
            if (!inner.at(j, k)) continue;
            bool hit = false;
            for (long dj = -1; dj <= 1 && !hit; ++dj)
                for (long dk = -1; dk <= 1 && !hit; ++dk)
                    hit = outer.at(j + dj, k + dk);
            if (!hit) return false;
        }
    return true;
}

PlanarRaster to_planar(const CylinderRaster& r, int size) {
    PlanarRaster p;
    p.size = size;
    p.half_width = 1.5 * std::exp(r.u_max());
    p.cells.assign(static_cast<size_t>(size) * size, 0);
    double cell = p.cell();

    auto mark_box = [&](double xmin, double xmax, double ymin, double ymax) {
        int ix0 = std::max(0, p.ix_of(xmin));
        int ix1 = std::min(size - 1, p.ix_of(xmax));
        int iy0 = std::max(0, p.iy_of(ymin));
        int iy1 = std::min(size - 1, p.iy_of(ymax));
        for (int iy = iy0; iy <= iy1; ++iy)
            for (int ix = ix0; ix <= ix1; ++ix) p.set(ix, iy);
    };

    for (long j = r.j_lo(); j <= r.j_hi(); ++j) {
        double r0 = std::exp((j - 0.5) * r.u_cell());
        double r1 = std::exp((j + 0.5) * r.u_cell());
        for (long k = 0; k < r.theta_cells(); ++k) {
            if (!r.at(j, k)) continue;
            double t0 = (k - 0.5) * r.theta_cell();
            double t1 = (k + 0.5) * r.theta_cell();
            double xs[4] = {r0 * std::cos(t0), r0 * std::cos(t1), r1 * std::cos(t0), r1 * std::cos(t1)};
            double ys[4] = {r0 * std::sin(t0), r0 * std::sin(t1), r1 * std::sin(t0), r1 * std::sin(t1)};
            double xmin = *std::min_element(xs, xs + 4), xmax = *std::max_element(xs, xs + 4);
            double ymin = *std::min_element(ys, ys + 4), ymax = *std::max_element(ys, ys + 4);
            // The outer arc can bulge past the corner chord.
            if (t0 <= 0 && 0 <= t1) xmax = r1;
            if (t0 <= kPi && kPi <= t1) xmin = -r1;
            double half_pi = kPi / 2;
            if (t0 <= half_pi && half_pi <= t1) ymax = r1;
            if (t0 <= 3 * half_pi && 3 * half_pi <= t1) ymin = -r1;
            mark_box(xmin, xmax, ymin, ymax);
        }
    }

    // Content below the window continues radially toward the origin.
    double rim = std::exp(r.u_min());
    for (long k = 0; k < r.theta_cells(); ++k) {
        if (!r.deep_cols[k]) continue;
        double th = k * r.theta_cell();
        double cx = std::cos(th), sy = std::sin(th);
        int steps = std::max(2, static_cast<int>(std::ceil(rim / (0.5 * cell))));
        for (int s = 0; s <= steps; ++s) {
            double rr = rim * s / steps;
            double x = rr * cx, y = rr * sy;
            mark_box(x - 0.5 * cell, x + 0.5 * cell, y - 0.5 * cell, y + 0.5 * cell);
        }
    }
    if (r.contains_zero) {
        int ix = p.ix_of(0), iy = p.iy_of(0);
        if (p.in_bounds(ix, iy)) p.set(ix, iy);
    }
    return p;
}

namespace {

// Distance-from-occupied map (4-connected BFS depth), used to choose an
// interior sample for each bounded component.
std::vector<int> occupied_depth_map(const PlanarRaster& p) {
    const int n = p.size;
    std::vector<int> depth(static_cast<size_t>(n) * n, -1);
    std::deque<std::pair<int, int>> q;
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
            if (p.at(ix, iy)) {
                depth[static_cast<size_t>(iy) * n + ix] = 0;
                q.emplace_back(ix, iy);
            }
    const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
    while (!q.empty()) {
        auto [ix, iy] = q.front();
        q.pop_front();
        int d = depth[static_cast<size_t>(iy) * n + ix];
        for (int t = 0; t < 4; ++t) {
            int jx = ix + dx[t], jy = iy + dy[t];
            if (!p.in_bounds(jx, jy)) continue;
            size_t idx = static_cast<size_t>(jy) * n + jx;
            if (depth[idx] < 0) {
                depth[idx] = d + 1;
                q.emplace_back(jx, jy);
            }
        }
    }
    return depth;
}

}  // namespace

ComponentReport bounded_complement_components(const CylinderRaster& r, int planar_size) {
    int size = planar_size > 0 ? planar_size : r.theta_cells();
    PlanarRaster p = to_planar(r, size);
    const int n = p.size;
    std::vector<int> label(static_cast<size_t>(n) * n, 0);  // 0 unvisited, -1 outer, >0 component id
    const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};

    auto flood = [&](int sx, int sy, int id) {
        std::deque<std::pair<int, int>> q;
        q.emplace_back(sx, sy);
        label[static_cast<size_t>(sy) * n + sx] = id;
        while (!q.empty()) {
            auto [ix, iy] = q.front();
            q.pop_front();
            for (int t = 0; t < 4; ++t) {
                int jx = ix + dx[t], jy = iy + dy[t];
                if (!p.in_bounds(jx, jy) || p.at(jx, jy)) continue;
                size_t idx = static_cast<size_t>(jy) * n + jx;
                if (label[idx] == 0) {
                    label[idx] = id;
                    q.emplace_back(jx, jy);
                }
            }
        }
    };

    for (int ix = 0; ix < n; ++ix) {
        if (!p.at(ix, 0) && label[ix] == 0) flood(ix, 0, -1);
        if (!p.at(ix, n - 1) && label[static_cast<size_t>(n - 1) * n + ix] == 0) flood(ix, n - 1, -1);
    }
    for (int iy = 0; iy < n; ++iy) {
        if (!p.at(0, iy) && label[static_cast<size_t>(iy) * n] == 0) flood(0, iy, -1);
        if (!p.at(n - 1, iy) && label[static_cast<size_t>(iy) * n + n - 1] == 0) flood(n - 1, iy, -1);
    }

    ComponentReport rep;
    std::vector<std::pair<int, int>> best_cell;  // per component: deepest cell
    std::vector<int> best_depth;
    std::vector<int> depth = occupied_depth_map(p);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            size_t idx = static_cast<size_t>(iy) * n + ix;
            if (p.at(ix, iy) || label[idx] != 0) continue;
            ++rep.count;
            flood(ix, iy, rep.count);
            best_cell.emplace_back(ix, iy);
            best_depth.push_back(depth[idx]);
        }
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            size_t idx = static_cast<size_t>(iy) * n + ix;
            int id = label[idx];
            if (id <= 0) continue;
            if (depth[idx] > best_depth[id - 1]) {
                best_depth[id - 1] = depth[idx];
                best_cell[id - 1] = {ix, iy};
            }
        }
    for (auto [ix, iy] : best_cell)
        rep.samples.emplace_back(p.x_of(ix), p.y_of(iy));
    return rep;
}

std::vector<ArcSeg> circle_section(const CylinderRaster& r, double u) {
    long j = r.row_of_u(u);
    if (!r.in_rows(j)) return {};
    int T = r.theta_cells();
    double th = r.theta_cell();
    struct Run { long start, end; };  // inclusive cell indices
    std::vector<Run> runs;
    long k = 0;
    while (k < T) {
        if (!r.at(j, k)) { ++k; continue; }
        long start = k;
        while (k < T && r.at(j, k)) ++k;
        runs.push_back({start, k - 1});
    }
    if (runs.empty()) return {};
    if (runs.size() == 1 && runs[0].start == 0 && runs[0].end == T - 1)
        return {ArcSeg{0, kTwoPi}};
    if (runs.size() > 1 && runs.front().start == 0 && runs.back().end == T - 1) {
        runs.front().start = runs.back().start - T;  // wrapped run
        runs.pop_back();
    }
    std::vector<ArcSeg> arcs;
    for (const Run& q : runs) {
        double lo = wrap_angle(q.start * th);
        arcs.push_back({lo, lo + (q.end - q.start) * th});
    }
    std::sort(arcs.begin(), arcs.end(), [](const ArcSeg& a, const ArcSeg& b) { return a.lo < b.lo; });
    return arcs;
}

std::vector<RowBand> row_bands(const CylinderRaster& r) {
    std::vector<RowBand> bands;
    int T = r.theta_cells();
    auto row_state = [&](long j) {
        int occ = 0;
        for (long k = 0; k < T; ++k) occ += r.at(j, k) ? 1 : 0;
        return occ;
    };
    long j = r.j_lo();
    while (j <= r.j_hi()) {
        int occ = row_state(j);
        if (occ == 0) { ++j; continue; }
        RowBand b;
        b.j_lo = j;
        b.all_full = true;
        while (j <= r.j_hi()) {
            int o = row_state(j);
            if (o == 0) break;
            b.all_full = b.all_full && (o == T);
            ++j;
        }
        b.j_hi = j - 1;
        b.section = circle_section(r, r.u_of_row((b.j_lo + b.j_hi) / 2));
        bands.push_back(std::move(b));
    }
    return bands;
}

void write_pgm(const PlanarRaster& p, std::ostream& os) {
    os << "P5\n" << p.size << " " << p.size << "\n255\n";
    for (int iy = p.size - 1; iy >= 0; --iy)
        for (int ix = 0; ix < p.size; ++ix)
            os.put(p.at(ix, iy) ? '\0' : '\xff');
}

}  // namespace calkin
