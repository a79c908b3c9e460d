#include "calkin/opindex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace calkin {

namespace {
constexpr size_t kInitialSamples = 256;
constexpr size_t kMaxSamples = 1 << 18;
}  // namespace

const char* kernel_status_name(KernelStatus s) {
    switch (s) {
        case KernelStatus::Passes: return "passes";
        case KernelStatus::Obstructed: return "obstructed";
        case KernelStatus::Assumed: return "assumed";
        case KernelStatus::Unknown: return "obstructed-unknown";
    }
    return "obstructed-unknown";
}

SymbolCurve SymbolCurve::polynomial(std::vector<double> coeffs) {
    SymbolCurve c;
    c.kind_ = Kind::Polynomial;
    c.poly_ = std::move(coeffs);
    if (c.poly_.empty()) throw IndexError("polynomial symbol needs coefficients");
    c.samples_ = c.sample(std::max<size_t>(kInitialSamples, 16 * c.poly_.size()));
    return c;
}

SymbolCurve SymbolCurve::laurent(std::vector<std::complex<double>> coeffs, long long min_k) {
    SymbolCurve c;
    c.kind_ = Kind::Laurent;
    c.laurent_ = std::move(coeffs);
    c.laurent_min_ = min_k;
    if (c.laurent_.empty()) throw IndexError("laurent symbol needs coefficients");
    c.samples_ = c.sample(std::max<size_t>(kInitialSamples, 16 * c.laurent_.size()));
    return c;
}

SymbolCurve SymbolCurve::from_samples(std::vector<std::complex<double>> samples) {
    if (samples.size() < 16) throw IndexError("a symbol curve needs at least 16 samples");
    SymbolCurve c;
    c.kind_ = Kind::Samples;
    c.samples_ = std::move(samples);
    return c;
}

std::complex<double> SymbolCurve::eval(double t) const {
    switch (kind_) {
        case Kind::Polynomial: {
            std::complex<double> z = std::polar(1.0, kTwoPi * t);
            std::complex<double> acc = 0;
            for (size_t i = poly_.size(); i-- > 0;) acc = acc * z + poly_[i];
            return acc;
        }
        case Kind::Laurent: {
            std::complex<double> z = std::polar(1.0, kTwoPi * t);
            std::complex<double> acc = 0;
            std::complex<double> zk = std::pow(z, static_cast<double>(laurent_min_));
            for (const auto& c : laurent_) {
                acc += c * zk;
                zk *= z;
            }
            return acc;
        }
        case Kind::Samples: {
            double s = t - std::floor(t);
            double pos = s * samples_.size();
            size_t i = static_cast<size_t>(pos) % samples_.size();
            size_t j = (i + 1) % samples_.size();
            double frac = pos - std::floor(pos);
            return samples_[i] * (1 - frac) + samples_[j] * frac;
        }
    }
    return 0;
}

std::vector<std::complex<double>> SymbolCurve::sample(size_t count) const {
    std::vector<std::complex<double>> out(count);
    for (size_t i = 0; i < count; ++i) out[i] = eval(static_cast<double>(i) / count);
    return out;
}

std::optional<double> SymbolCurve::omitted_ray() const {
    std::vector<ArcSeg> arcs;
    const double pad = 0.02;  // dilate each sample's argument slightly
    for (const auto& z : samples_) {
        if (std::abs(z) < 1e-12) return std::nullopt;  // passes through 0: every ray is hit
        double a = wrap_angle(std::arg(z));
        arcs.push_back({a - pad, a - pad + 2 * pad});
    }
    bool covers = false;
    arcs = merge_arcs(std::move(arcs), &covers);
    if (covers) return std::nullopt;
    ThetaSet s;
    s.kind = ThetaSet::Kind::Arcs;
    s.arcs = std::move(arcs);
    auto gaps = theta_gaps(s);
    if (gaps.empty()) return std::nullopt;
    const ArcSeg* widest = &gaps[0];
    for (const ArcSeg& g : gaps)
        if (g.length() > widest->length()) widest = &g;
    return wrap_angle(0.5 * (widest->lo + widest->hi));
}

SymbolCurve SymbolCurve::power_branch(int n, double cut_ray) const {
    double scale = std::ldexp(1.0, -n);
    std::vector<std::complex<double>> out;
    size_t count = std::max(samples_.size(), kInitialSamples);
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        std::complex<double> z = eval(static_cast<double>(i) / count);
        double r = std::abs(z);
        // Branch of arg with the cut along cut_ray.
        double a = wrap_angle(std::arg(z) - cut_ray) + cut_ray;
        out.push_back(std::polar(std::pow(r, scale), a * scale));
    }
    return SymbolCurve::from_samples(std::move(out));
}

int winding_number(const SymbolCurve& curve, std::complex<double> lambda) {
    std::vector<std::complex<double>> pts = curve.samples();
    for (;;) {
        double scale = 0;
        for (const auto& z : pts) scale = std::max(scale, std::abs(z - lambda));
        double mindist = kInf;
        for (const auto& z : pts) mindist = std::min(mindist, std::abs(z - lambda));
        bool ok = mindist > 1e-13 * std::max(1.0, scale);
        double total = 0;
        if (ok) {
            double worst = 0;
            for (size_t i = 0; i < pts.size(); ++i) {
                std::complex<double> a = pts[i] - lambda;
                std::complex<double> b = pts[(i + 1) % pts.size()] - lambda;
                double d = std::arg(b / a);
                worst = std::max(worst, std::fabs(d));
                total += d;
            }
            if (worst < kPi / 2) {
                double turns = total / kTwoPi;
                long rounded = std::lround(turns);
                if (std::fabs(turns - rounded) > 0.25)
                    throw OnCurveError("winding number did not converge to an integer");
                return static_cast<int>(rounded);
            }
        }
        if (pts.size() >= kMaxSamples)
            throw OnCurveError("query point is on the symbol curve (refinement floor reached)");
        size_t next = pts.size() * 2;
        if (curve.resampleable()) {
            pts = curve.sample(next);
        } else {
            std::vector<std::complex<double>> refined;
            refined.reserve(next);
            for (size_t i = 0; i < pts.size(); ++i) {
                refined.push_back(pts[i]);
                refined.push_back(0.5 * (pts[i] + pts[(i + 1) % pts.size()]));
            }
            pts = std::move(refined);
        }
    }
}

OperatorModel OperatorModel::toeplitz(SymbolCurve s, std::string desc) {
    OperatorModel m;
    m.kind = Kind::Toeplitz;
    m.symbol = std::move(s);
    m.description = std::move(desc);
    return m;
}

OperatorModel OperatorModel::multiplication(std::shared_ptr<CylinderRaster> region, std::string desc) {
    OperatorModel m;
    m.kind = Kind::Multiplication;
    m.region = std::move(region);
    m.description = std::move(desc);
    return m;
}

OperatorModel OperatorModel::direct_sum(std::vector<OperatorModel> parts) {
    OperatorModel m;
    m.kind = Kind::DirectSum;
    m.parts = std::move(parts);
    m.description = "direct_sum";
    return m;
}

std::optional<OperatorModel> model_from_decls(const std::vector<ModelDecl>& decls) {
    std::vector<OperatorModel> parts;
    for (const ModelDecl& d : decls) {
        if (d.kind == "toeplitz") {
            if (!d.poly.empty()) {
                parts.push_back(OperatorModel::toeplitz(SymbolCurve::polynomial(d.poly)));
            } else if (!d.laurent.empty()) {
                std::vector<std::complex<double>> cs(d.laurent.begin(), d.laurent.end());
                parts.push_back(
                    OperatorModel::toeplitz(SymbolCurve::laurent(std::move(cs), d.laurent_min)));
            } else {
                throw IndexError("toeplitz model needs poly=[...] or laurent=[...]");
            }
        } else if (d.kind == "multiplication") {
            parts.push_back(OperatorModel::multiplication());
        } else {
            throw IndexError("unknown model kind '" + d.kind + "'");
        }
    }
    if (parts.empty()) return std::nullopt;
    if (parts.size() == 1) return parts[0];
    return OperatorModel::direct_sum(std::move(parts));
}

namespace {

bool region_contains(const CylinderRaster& r, std::complex<double> lambda) {
    if (std::abs(lambda) < 1e-300) return r.contains_zero;
    double u = std::log(std::abs(lambda));
    double th = wrap_angle(std::arg(lambda));
    long k = r.col_of_theta(th);
    if (u < r.u_min()) return r.deep_cols[k] != 0;
    long j = r.row_of_u(u);
    for (long dj = -1; dj <= 1; ++dj)
        for (long dk = -1; dk <= 1; ++dk)
            if (r.at(j + dj, k + dk)) return true;
    return false;
}

}  // namespace

long fredholm_index(const OperatorModel& m, std::complex<double> lambda, const Level* level) {
    switch (m.kind) {
        case OperatorModel::Kind::Toeplitz:
            return -winding_number(m.symbol, lambda);
        case OperatorModel::Kind::Multiplication: {
            const CylinderRaster* region = m.region ? m.region.get() : (level ? &level->region : nullptr);
            if (region && region_contains(*region, lambda))
                throw IndexError("lambda lies in the essential spectrum of the multiplication model");
            return 0;  // normal operator
        }
        case OperatorModel::Kind::DirectSum: {
            long total = 0;
            for (const OperatorModel& part : m.parts) total += fredholm_index(part, lambda, level);
            return total;
        }
    }
    return 0;
}

namespace {

// Mean distance from the symbol curve to the level-0 set, in cells.
double model_spectrum_mismatch(const OperatorModel& m, const Level& level0,
                               const SpectrumSpec& spec) {
    if (m.kind == OperatorModel::Kind::DirectSum) {
        double worst = 0;
        for (const auto& part : m.parts)
            worst = std::max(worst, model_spectrum_mismatch(part, level0, spec));
        return worst;
    }
    if (m.kind != OperatorModel::Kind::Toeplitz) return 0;
    double worst = 0;
    for (const auto& z : m.symbol.samples()) {
        double tol = 2.5 * std::max(level0.region.u_cell(), level0.region.theta_cell());
        if (!level_contains(spec, 0, z, tol)) worst = std::max(worst, 1.0);
    }
    return worst;
}

std::optional<OperatorModel> model_at_level(const OperatorModel& m, int n) {
    if (n == 0) return m;
    switch (m.kind) {
        case OperatorModel::Kind::Multiplication:
            return m;  // the region tracks the tower level
        case OperatorModel::Kind::Toeplitz: {
            auto ray = m.symbol.omitted_ray();
            if (!ray) return std::nullopt;  // no principal branch of the 2^-n power
            OperatorModel out = m;
            out.symbol = m.symbol.power_branch(n, *ray + kPi);
            out.description = m.description + "^(2^-" + std::to_string(n) + ")";
            return out;
        }
        case OperatorModel::Kind::DirectSum: {
            OperatorModel out;
            out.kind = OperatorModel::Kind::DirectSum;
            out.description = m.description;
            for (const auto& part : m.parts) {
                auto lp = model_at_level(part, n);
                if (!lp) return std::nullopt;
                out.parts.push_back(std::move(*lp));
            }
            return out;
        }
    }
    return std::nullopt;
}

}  // namespace

KernelResult check_kernel_condition(const Tower& t, const std::optional<OperatorModel>& model,
                                    bool assume_normal_lifts) {
    KernelResult out;
    if (!model) {
        out.status = assume_normal_lifts ? KernelStatus::Assumed : KernelStatus::Unknown;
        out.note = assume_normal_lifts
                       ? "no operator model; normal lifts of each q(t) assumed by flag"
                       : "no operator model and no normal-lift assumption";
        return out;
    }
    if (model_spectrum_mismatch(*model, t.levels[0], t.spec) > 0) {
        out.status = KernelStatus::Unknown;
        out.note = "model essential spectrum inconsistent with the level-0 set beyond tolerance";
        return out;
    }
    for (const Level& lv : t.levels) {
        std::vector<std::complex<double>> lambdas = lv.component_samples;
        if (!lv.region.contains_zero) {
            // Add the origin itself when it is enclosed.
            for (auto s : lv.component_samples)
                if (std::abs(s) < 0.5 * std::exp(lv.region.u_min())) {
                    lambdas.insert(lambdas.begin(), {0.0, 0.0});
                    break;
                }
            // Even without a component sample near 0 it may be enclosed
            // (finite levels carry no samples).
        }
        if (lambdas.empty()) continue;  // nothing to obstruct at this level
        auto lm = model_at_level(*model, lv.n);
        if (!lm) {
            out.status = KernelStatus::Unknown;
            out.note = "no per-level model derivable at level " + std::to_string(lv.n) +
                       " (symbol does not omit a ray); supply explicit per-level models";
            return out;
        }
        for (const auto& lambda : lambdas) {
            long idx;
            try {
                idx = fredholm_index(*lm, lambda, &lv);
            } catch (const IndexError&) {
                continue;  // sample fell on/inside the essential spectrum; skip it
            }
            out.samples.push_back({lv.n, lambda, idx});
            if (idx != 0) {
                out.status = KernelStatus::Obstructed;
                out.witness_lambda = lambda;
                out.witness_level = lv.n;
                out.witness_index = idx;
                std::ostringstream note;
                note << "index " << idx << " at lambda=(" << lambda.real() << "," << lambda.imag()
                     << "), level " << lv.n;
                out.note = note.str();
                return out;
            }
        }
    }
    out.status = KernelStatus::Passes;
    out.note = "index 0 at every bounded-component sample of every level";
    return out;
}

}  // namespace calkin
