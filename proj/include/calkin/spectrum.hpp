#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace calkin {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Thrown on malformed input documents; carries the 1-based position.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, int line, int column)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + std::move(msg)),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Thrown when a document parses but describes an invalid spectrum.
class SpecError : public std::runtime_error {
public:
    explicit SpecError(const std::string& msg)
        : std::runtime_error("spec error: " + msg) {}
};

// Geometric primitives of the spectrum description. Infinite extents are
// symbolic: im_hi may be +inf / im_lo -inf (half-lines), re_lo may be -inf.
// No primitive may reach re = +inf.
struct PointPrim {
    double re = 0, im = 0;
};
struct VSegmentPrim {
    double re = 0, im_lo = 0, im_hi = 0;
};
struct HSegmentPrim {
    double re_lo = 0, re_hi = 0, im = 0;
};
struct RectPrim {
    double re_lo = 0, re_hi = 0, im_lo = 0, im_hi = 0;
};
struct VLatticePrim {
    double re = 0, im_base = 0, im_step = 0;
};
struct VLinePrim {
    double re = 0;
};
struct PeriodicBandPrim {
    double re_lo = 0, re_hi = 0;
    std::vector<std::pair<double, double>> im_intervals;
    double period = 0;
};

using Primitive = std::variant<PointPrim, VSegmentPrim, HSegmentPrim, RectPrim,
                               VLatticePrim, VLinePrim, PeriodicBandPrim>;

const char* primitive_kind(const Primitive& p);

struct SpectrumSpec {
    std::vector<Primitive> primitives;
    std::string name;  // empty when absent
};

/// zeta = sup Re, eta = inf Re (may be -inf). Always eta <= zeta < inf.
struct StripBounds {
    double zeta = 0;
    double eta = 0;
};

// Real extent [lo, hi] of a primitive along one axis; lo may be -inf,
// hi may be +inf (im axis only).
struct Extent {
    double lo = 0, hi = 0;
};

Extent re_extent(const Primitive& p);
Extent im_extent(const Primitive& p);

void validate(const SpectrumSpec& spec);  // throws SpecError
StripBounds strip_bounds(const SpectrumSpec& spec);

// Symbolic descriptor of {t : s + it in Z} for a fixed s.
struct Section {
    enum class Kind { Empty, Intervals, HalfLine, FullLine, Lattice, Periodic, Mixed };
    Kind kind = Kind::Empty;
    // Intervals: closed, disjoint, sorted (degenerate = point).
    std::vector<std::pair<double, double>> intervals;
    // HalfLine: t >= end (upward) or t <= end.
    double end = 0;
    bool upward = true;
    // Lattice: base + step*k, k in Z.
    double base = 0, step = 0;
    // Periodic: union of intervals + period*Z.
    double period = 0;
    std::vector<std::pair<double, double>> per_intervals;
};

Section section_at(const SpectrumSpec& spec, double s);

// ---------------------------------------------------------------------------
// External document format: flat key=value tables, one [[primitive]] per
// primitive, plus optional [[model]] and [[probe]] tables picked up by the
// operator-model and continuity layers.

struct ModelDecl {
    std::string kind;                  // "toeplitz" | "multiplication"
    std::vector<double> poly;          // toeplitz: coefficients of z^0..z^d
    std::vector<double> laurent;       // toeplitz alternative: c_{k0}..c_{k1}
    long long laurent_min = 0;         // k0 for laurent coefficients
    int line = 0;
};

struct ProbeDecl {
    std::string L_pattern;             // "n" | "2n" | "const:c" (empty if list)
    std::string S_pattern;
    std::vector<long long> L_list;     // explicit entries (empty if pattern)
    std::vector<long long> S_list;
    double epsilon = 0.1;
    int n0 = 1;
    int line = 0;
};

struct Document {
    SpectrumSpec spec;
    std::vector<ModelDecl> models;
    std::vector<ProbeDecl> probes;
};

Document parse_document(const std::string& text);
SpectrumSpec parse_spec(const std::string& text);
std::string serialize_spec(const SpectrumSpec& spec);

}  // namespace calkin
