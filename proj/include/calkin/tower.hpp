#pragma once

// The squaring tower: level sets cl(exp(2^-n Z)) with connecting map
// z -> z^2, per-level derived data, fiber sampling through the inverse
// limit, and the perfectness classifier.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "calkin/raster.hpp"
#include "calkin/spectrum.hpp"

namespace calkin {

class TowerError : public std::runtime_error {
public:
    explicit TowerError(const std::string& msg) : std::runtime_error("tower error: " + msg) {}
};

struct Level {
    int n = 0;
    CylinderRaster region;     // the level set in log-cylinder coordinates
    CylinderRaster antipodal;  // cells whose antipode is also occupied
    int ext_rank = 0;          // bounded components of the planar complement
    std::vector<std::complex<double>> component_samples;
    std::vector<RowBand> sections;
    std::optional<std::vector<std::complex<double>>> finite_points;

    double max_modulus() const;  // max e^u over occupied cells (exact for finite levels)
};

struct Tower {
    SpectrumSpec spec;
    int depth = 0;
    StripBounds bounds{};
    ResolutionParams res{};
    std::vector<Level> levels;  // 0..depth
};

// max_threads <= 1 builds levels sequentially; levels are independent, so
// the result is identical either way.
Tower build_tower(const SpectrumSpec& spec, int depth, const ResolutionParams& res,
                  int max_threads = 1);

struct FiberPoint {
    std::vector<std::complex<double>> coords;  // x_0 .. x_depth, x_{n+1}^2 = x_n
    std::string provenance;
};

inline constexpr double kFiberTolExact = 1e-9;

// Canonical fibers x_n = exp(2^-n z) for deterministically sampled z in Z,
// plus twisted fibers built by square-root choices constrained to stay in
// the level sets. Adversarial choice sequences: alternating, all-ones, and
// seeded pseudorandom. Bit-for-bit deterministic for a fixed seed.
std::vector<FiberPoint> sample_fibers(const Tower& t, int canonical_count, int twisted_count,
                                      uint64_t seed, int depth = -1);

enum class Ternary { Yes, No, Unknown };
const char* ternary_name(Ternary v);

struct PerfectnessVerdict {
    Ternary value = Ternary::Unknown;
    std::string reason;
};

PerfectnessVerdict is_delta_perfect(const Tower& t);

}  // namespace calkin
