#pragma once

// Exact geometry of the level sets cl(exp(2^-n Z)) in log-cylinder
// coordinates (u = ln|z|, theta = arg z), derived symbolically from the
// primitive vocabulary. Everything here is resolution-free; the raster
// layer consumes these descriptions.

#include <complex>
#include <optional>
#include <vector>

#include "calkin/spectrum.hpp"

namespace calkin {

// Closed arc on the theta circle; hi >= lo and hi - lo <= 2*pi after
// normalization. Positions are taken mod 2*pi.
struct ArcSeg {
    double lo = 0, hi = 0;
    double length() const { return hi - lo; }
};

struct ThetaSet {
    enum class Kind { Empty, Full, Arcs, Points };
    Kind kind = Kind::Empty;
    std::vector<ArcSeg> arcs;     // disjoint, sorted by lo, lo in [0, 2pi)
    std::vector<double> points;   // sorted, in [0, 2pi)

    bool empty() const { return kind == Kind::Empty; }
    bool full() const { return kind == Kind::Full; }
};

double wrap_angle(double theta);                    // into [0, 2pi)
double angle_gap(double a, double b);               // min |a - b| mod 2pi
double arc_distance(double theta, const ArcSeg& a); // 0 if inside
std::vector<ArcSeg> merge_arcs(std::vector<ArcSeg> arcs, bool* covers_all = nullptr);
ThetaSet theta_union(const ThetaSet& a, const ThetaSet& b);
bool theta_contains(const ThetaSet& s, double theta, double tol);
// Gaps of the set: arcs of the complement (empty when Full; Full complement
// when Empty is handled by the caller).
std::vector<ArcSeg> theta_gaps(const ThetaSet& s);
bool theta_symmetric_under_pi(const ThetaSet& s, double tol);
ThetaSet rotate(const ThetaSet& s, double delta);

// Best rational p/q approximation with q <= max_q, within tol; exact dyadic
// ratios (the common case) are always recovered.
std::optional<std::pair<long long, long long>> as_rational(double t, long long max_q, double tol);

// One primitive's image at level n: a u-extent times a theta set. The theta
// set of every primitive in the vocabulary is constant across its u-extent,
// so a slab describes the image exactly. u_lo == -inf marks content running
// down to the puncture at the origin.
struct LevelSlab {
    double u_lo = 0, u_hi = 0;
    ThetaSet theta;
};

std::vector<LevelSlab> level_slabs(const SpectrumSpec& spec, int n);
// Union of all theta sets (directions hit by the level set).
ThetaSet level_theta_coverage(const SpectrumSpec& spec, int n);

// Exact point list when the level set is finite (pure point/lattice specs
// with commensurable steps); nullopt otherwise.
std::optional<std::vector<std::complex<double>>> exact_level_points(const SpectrumSpec& spec, int n);

// Circle sections at the finitely many radii of a spec whose Re-projection
// is finite; nullopt when some primitive has a nondegenerate Re-extent.
struct RadialSection {
    double s = 0;   // Re-value in the spectrum plane; radius is exp(2^-n s)
    double u = 0;   // 2^-n s
    ThetaSet theta;
};
std::optional<std::vector<RadialSection>> finite_radial_sections(const SpectrumSpec& spec, int n);

// Theta set of the level-n circle section at spectrum abscissa s.
ThetaSet section_theta_at_level(const SpectrumSpec& spec, int n, double s);

// Membership of a complex point in the level set, up to tol in (u, theta).
bool level_contains(const SpectrumSpec& spec, int n, std::complex<double> z, double tol);

// Exact sup over the level set of |1 - z| (the continuity defect d_n).
double max_dist_to_one(const SpectrumSpec& spec, int n);

// True when the primitive's theta set is the full circle at every level
// (lines, dense lattices, infinite vertical extents).
bool theta_full_at_every_level(const Primitive& p);

}  // namespace calkin
