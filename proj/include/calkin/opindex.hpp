#pragma once

// Winding-number engine and the index oracle on operator symbol models:
// Toeplitz models indexed analytically from the symbol, multiplication
// models (index 0 off the region), and direct sums.

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "calkin/tower.hpp"

namespace calkin {

class IndexError : public std::runtime_error {
public:
    explicit IndexError(const std::string& msg) : std::runtime_error("index error: " + msg) {}
};

class OnCurveError : public IndexError {
public:
    explicit OnCurveError(const std::string& msg) : IndexError(msg) {}
};

// A closed curve in the plane with a resampleable source. Polynomial and
// Laurent sources evaluate on |z| = 1; sample sources refine by linear
// interpolation of the stored polygon.
class SymbolCurve {
public:
    static SymbolCurve polynomial(std::vector<double> coeffs);
    static SymbolCurve laurent(std::vector<std::complex<double>> coeffs, long long min_k);
    static SymbolCurve from_samples(std::vector<std::complex<double>> samples);

    std::complex<double> eval(double t) const;  // t in [0, 1)
    std::vector<std::complex<double>> sample(size_t count) const;
    const std::vector<std::complex<double>>& samples() const { return samples_; }
    bool resampleable() const { return kind_ != Kind::Samples; }

    // Union of sample arguments, dilated; nullopt when no ray is omitted.
    std::optional<double> omitted_ray() const;
    // Principal-branch 2^-n power with the branch cut along the omitted ray.
    SymbolCurve power_branch(int n, double cut_ray) const;

private:
    enum class Kind { Polynomial, Laurent, Samples };
    Kind kind_ = Kind::Samples;
    std::vector<double> poly_;
    std::vector<std::complex<double>> laurent_;
    long long laurent_min_ = 0;
    std::vector<std::complex<double>> samples_;
};

// Argument-increment winding number with adaptive refinement until every
// segment turns by less than pi/2; sample doubling is capped at 2^18 before
// the point is declared on-curve.
int winding_number(const SymbolCurve& curve, std::complex<double> lambda);

struct OperatorModel {
    enum class Kind { Toeplitz, Multiplication, DirectSum };
    Kind kind = Kind::Multiplication;
    SymbolCurve symbol;                        // Toeplitz
    std::shared_ptr<CylinderRaster> region;    // Multiplication (empty -> the tower level)
    std::vector<OperatorModel> parts;          // DirectSum
    std::string description;

    static OperatorModel toeplitz(SymbolCurve s, std::string desc = "toeplitz");
    static OperatorModel multiplication(std::shared_ptr<CylinderRaster> region = nullptr,
                                        std::string desc = "multiplication");
    static OperatorModel direct_sum(std::vector<OperatorModel> parts);
};

// Build the model a document declares; several [[model]] tables form a
// direct sum.
std::optional<OperatorModel> model_from_decls(const std::vector<ModelDecl>& decls);

// Fredholm index at lambda (lambda must avoid the essential spectrum).
// The optional level supplies the region of region-less multiplication parts.
long fredholm_index(const OperatorModel& m, std::complex<double> lambda,
                    const Level* level = nullptr);

enum class KernelStatus { Passes, Obstructed, Assumed, Unknown };
const char* kernel_status_name(KernelStatus s);

struct KernelSample {
    int n = 0;
    std::complex<double> lambda;
    long index = 0;
};

struct KernelResult {
    KernelStatus status = KernelStatus::Unknown;
    std::complex<double> witness_lambda;
    int witness_level = -1;
    long witness_index = 0;
    std::vector<KernelSample> samples;
    std::string note;
};

// The index condition over every level and every bounded-component sample
// point, with lambda = 0 added whenever the origin is enclosed but not in
// the closure of the level set.
KernelResult check_kernel_condition(const Tower& t, const std::optional<OperatorModel>& model,
                                    bool assume_normal_lifts);

}  // namespace calkin
