#pragma once

// Strong-continuity criteria at finite depth: the necessary fiber-tail
// condition, the O(2^-n) sufficient bound with a fitted constant, and the
// quasi-uniform covering test driven by (L_n, S_n) probes.

#include <optional>
#include <string>
#include <vector>

#include "calkin/conditions.hpp"
#include "calkin/tower.hpp"

namespace calkin {

class ContinuityError : public std::runtime_error {
public:
    explicit ContinuityError(const std::string& msg)
        : std::runtime_error("continuity error: " + msg) {}
};

struct ContinuityThresholds {
    double nec_fail = 0.1;   // a fiber tail stuck above this fails the necessary condition
    double nec_pass = 0.05;  // every tail below this (and decreasing) passes
    double o2n_ratio = 2.0;  // max/min ratio of 2^n d_n over the last window
    int quasi_max_k = 16;    // index budget of the covering search
};

struct ContinuityProbe {
    std::vector<long long> L;
    std::vector<long long> S;
    double epsilon = 0.1;
    int n0 = 1;
    std::string label;
};

// Instantiate a declared probe against a fiber depth; validates the
// 2^-L S -> 0 tail and 1 <= S <= 2^{L+1}-1 invariants.
ContinuityProbe make_probe(const ProbeDecl& decl, int fiber_depth);
ContinuityProbe default_probe(int fiber_depth);

struct NecessaryResult {
    Verdict3 v = Verdict3::Inconclusive;
    std::optional<FiberPoint> witness;
    std::string evidence;
};

struct O2nResult {
    Verdict3 v = Verdict3::Inconclusive;
    double C = 0;               // fitted sup of 2^n d_n when it passes
    std::vector<double> d;      // d_n per level
    std::string evidence;
};

struct QuasiUniformResult {
    Verdict3 v = Verdict3::Inconclusive;
    std::vector<int> indices;   // chosen probe indices when it passes
    std::optional<FiberPoint> witness;
    std::string label;
    std::string evidence;
};

struct ContinuityReport {
    bool eta_finite = false;
    NecessaryResult necessary;
    O2nResult sufficient;
    std::vector<QuasiUniformResult> quasi;
};

NecessaryResult check_necessary(const Tower& t, const std::vector<FiberPoint>& fibers,
                                const ContinuityThresholds& th = {});
O2nResult check_sufficient_O2n(const Tower& t, const ContinuityThresholds& th = {});
QuasiUniformResult quasi_uniform_test(const Tower& t, const std::vector<FiberPoint>& fibers,
                                      const ContinuityProbe& probe,
                                      const ContinuityThresholds& th = {});

// Exact |1 - x^s| via binary exponentiation (s can be ~2^40).
double power_defect(std::complex<double> x, long long s);

}  // namespace calkin
