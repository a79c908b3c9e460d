#pragma once

// Discrete geometry on the log-cylinder (u = ln|z|, theta periodic) and in
// the plane: occupancy grids, antipodal maps, distances, flood fill of
// complements, circle sections.
//
// Grid layout: row centers sit at u = j * u_cell for integer j (the row
// index is absolute, not storage-relative), column centers at theta =
// k * 2pi/theta_cells. Level n uses u_cell = 2^-n / u_cells_per_unit, so
// the squaring map (u, theta) -> (2u, 2 theta) is the index map
// (j, k) -> (j, 2k mod theta_cells): exact, no resampling.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "calkin/levelset.hpp"
#include "calkin/spectrum.hpp"

namespace calkin {

class RasterError : public std::runtime_error {
public:
    explicit RasterError(const std::string& msg) : std::runtime_error("raster error: " + msg) {}
};

struct ResolutionParams {
    int theta_cells = 2048;       // power of two
    int u_cells_per_unit = 1024;  // at level 0; level n doubles per level
    double clip_depth = 4.0;      // window depth below zeta when eta = -inf
    long max_u_rows = 1 << 14;    // coarsen rather than exhaust memory
};

class CylinderRaster {
public:
    CylinderRaster() = default;
    CylinderRaster(long j_lo, long j_hi, int theta_cells, double u_cell);

    long j_lo() const { return j_lo_; }
    long j_hi() const { return j_hi_; }
    long rows() const { return j_hi_ - j_lo_ + 1; }
    int theta_cells() const { return theta_cells_; }
    double u_cell() const { return u_cell_; }
    double theta_cell() const { return kTwoPi / theta_cells_; }
    double u_min() const { return j_lo_ * u_cell_; }
    double u_max() const { return j_hi_ * u_cell_; }
    double u_of_row(long j) const { return j * u_cell_; }
    double theta_of_col(long k) const { return wrap_col(k) * theta_cell(); }
    long row_of_u(double u) const { return std::lround(u / u_cell_); }
    long col_of_theta(double theta) const { return std::lround(wrap_angle(theta) / theta_cell()) % theta_cells_; }

    long wrap_col(long k) const {
        long m = k % theta_cells_;
        return m < 0 ? m + theta_cells_ : m;
    }
    bool in_rows(long j) const { return j >= j_lo_ && j <= j_hi_; }

    bool at(long j, long k) const {
        if (!in_rows(j)) return false;
        return cells_[static_cast<size_t>(j - j_lo_) * theta_cells_ + wrap_col(k)] != 0;
    }
    void set(long j, long k, bool v = true) {
        cells_[static_cast<size_t>(j - j_lo_) * theta_cells_ + wrap_col(k)] = v ? 1 : 0;
    }

    bool contains_zero = false;        // 0 lies in the closure of the planar image
    std::vector<uint8_t> deep_cols;    // columns whose content continues below the window

    bool empty() const;
    size_t occupied_count() const;
    bool same_geometry(const CylinderRaster& o) const {
        return j_lo_ == o.j_lo_ && j_hi_ == o.j_hi_ && theta_cells_ == o.theta_cells_ &&
               u_cell_ == o.u_cell_;
    }

    const std::vector<uint8_t>& cells() const { return cells_; }

private:
    long j_lo_ = 0, j_hi_ = -1;
    int theta_cells_ = 0;
    double u_cell_ = 1;
    std::vector<uint8_t> cells_;
};

CylinderRaster rasterize_level(const SpectrumSpec& spec, int n, const ResolutionParams& res);

CylinderRaster antipodal_set(const CylinderRaster& r);

// Minimum cylinder-metric distance between occupied cell centers, +inf when
// either side is empty. separation_cells measures the same minimum in index
// space (u in rows, theta in columns), which is what cell-count thresholds
// compare against.
double separation_distance(const CylinderRaster& a, const CylinderRaster& b);
double separation_cells(const CylinderRaster& a, const CylinderRaster& b);

CylinderRaster dilate8(const CylinderRaster& r);
CylinderRaster difference(const CylinderRaster& a, const CylinderRaster& b);
bool rasters_intersect(const CylinderRaster& a, const CylinderRaster& b);

// Image under the squaring map in index space, and the 1-cell containment
// check used by the tower consistency pass.
CylinderRaster squared_image(const CylinderRaster& r);
bool within_one_cell(const CylinderRaster& inner, const CylinderRaster& outer);

struct PlanarRaster {
    int size = 0;            // size x size cells
    double half_width = 1;   // window [-half_width, half_width]^2
    std::vector<uint8_t> cells;

    double cell() const { return 2 * half_width / size; }
    bool in_bounds(int ix, int iy) const { return ix >= 0 && iy >= 0 && ix < size && iy < size; }
    bool at(int ix, int iy) const { return cells[static_cast<size_t>(iy) * size + ix] != 0; }
    void set(int ix, int iy, bool v = true) { cells[static_cast<size_t>(iy) * size + ix] = v ? 1 : 0; }
    double x_of(int ix) const { return -half_width + (ix + 0.5) * cell(); }
    double y_of(int iy) const { return -half_width + (iy + 0.5) * cell(); }
    int ix_of(double x) const { return static_cast<int>(std::floor((x + half_width) / cell())); }
    int iy_of(double y) const { return static_cast<int>(std::floor((y + half_width) / cell())); }
};

PlanarRaster to_planar(const CylinderRaster& r, int size);

struct ComponentReport {
    int count = 0;
    std::vector<std::complex<double>> samples;  // one interior point per bounded component
};

// Bounded components of the complement of the planar image (4-connected
// complement against the 8-connected occupied set). planar_size 0 picks
// the raster's theta_cells.
ComponentReport bounded_complement_components(const CylinderRaster& r, int planar_size = 0);

// Maximal occupied arcs of the row nearest to u, merged across the wrap.
std::vector<ArcSeg> circle_section(const CylinderRaster& r, double u);

// Contiguous bands of occupied rows with a representative section each.
struct RowBand {
    long j_lo = 0, j_hi = 0;
    bool all_full = false;               // every row in the band is a full circle
    std::vector<ArcSeg> section;         // section of the band's middle row
};
std::vector<RowBand> row_bands(const CylinderRaster& r);

void write_pgm(const PlanarRaster& r, std::ostream& os);

}  // namespace calkin
