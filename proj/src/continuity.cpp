#include "calkin/continuity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace calkin {

double power_defect(std::complex<double> x, long long s) {
    std::complex<double> acc = 1, base = x;
    unsigned long long e = static_cast<unsigned long long>(s);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return std::abs(1.0 - acc);
}

namespace {

std::vector<long long> expand_pattern(const std::string& pattern,
                                      const std::vector<long long>& explicit_list,
                                      bool is_L, const std::vector<long long>& L,
                                      int fiber_depth, int line_hint) {
    (void)line_hint;
    if (!explicit_list.empty()) {
        for (long long v : explicit_list)
            if (is_L && v > fiber_depth)
                throw ContinuityError("probe entry L=" + std::to_string(v) +
                                      " exceeds fiber depth " + std::to_string(fiber_depth));
        return explicit_list;
    }
    size_t count = is_L ? 0 : L.size();
    std::vector<long long> out;
    if (is_L) {
        auto gen = [&](auto f) {
            for (long long n = 1;; ++n) {
                long long v = f(n);
                if (v > fiber_depth) break;
                out.push_back(v);
            }
        };
        if (pattern == "n") gen([](long long n) { return n; });
        else if (pattern == "2n") gen([](long long n) { return 2 * n; });
        else if (pattern.rfind("const:", 0) == 0) {
            long long c = std::stoll(pattern.substr(6));
            if (c > fiber_depth) throw ContinuityError("probe const L exceeds fiber depth");
            out.assign(16, c);
        } else {
            throw ContinuityError("unknown probe pattern '" + pattern + "'");
        }
    } else {
        auto gen = [&](auto f) {
            for (size_t i = 0; i < count; ++i) out.push_back(f(static_cast<long long>(i + 1)));
        };
        if (pattern == "n") gen([](long long n) { return n; });
        else if (pattern == "2n") gen([](long long n) { return 2 * n; });
        else if (pattern.rfind("const:", 0) == 0) {
            long long c = std::stoll(pattern.substr(6));
            gen([c](long long) { return c; });
        } else {
            throw ContinuityError("unknown probe pattern '" + pattern + "'");
        }
    }
    return out;
}

}  // namespace

ContinuityProbe make_probe(const ProbeDecl& decl, int fiber_depth) {
    ContinuityProbe p;
    p.epsilon = decl.epsilon;
    p.n0 = decl.n0;
    if (p.epsilon <= 0) throw ContinuityError("probe epsilon must be positive");
    if (p.n0 < 1) throw ContinuityError("probe n0 must be >= 1");
    p.L = expand_pattern(decl.L_pattern, decl.L_list, true, {}, fiber_depth, decl.line);
    p.S = expand_pattern(decl.S_pattern, decl.S_list, false, p.L, fiber_depth, decl.line);
    if (p.S.size() < p.L.size()) p.L.resize(p.S.size());
    if (p.L.size() < p.S.size()) p.S.resize(p.L.size());
    if (p.L.empty()) throw ContinuityError("probe generates no entries within the fiber depth");
    std::ostringstream label;
    label << "L=" << (decl.L_pattern.empty() ? "list" : decl.L_pattern)
          << " S=" << (decl.S_pattern.empty() ? "list" : decl.S_pattern) << " eps=" << p.epsilon
          << " n0=" << p.n0;
    p.label = label.str();

    for (size_t i = 0; i < p.L.size(); ++i) {
        if (p.L[i] < 1 || p.S[i] < 1) throw ContinuityError("probe entries must be positive");
        if (p.L[i] < 62 && p.S[i] > (2ll << p.L[i]) - 1)
            throw ContinuityError("probe violates S <= 2^{L+1}-1 at entry " + std::to_string(i));
    }
    // 2^-L S must go to zero along the tail (strictly decreasing).
    size_t tail = std::min<size_t>(4, p.L.size() - 1);
    for (size_t i = p.L.size() - tail; i < p.L.size(); ++i) {
        double prev = std::ldexp(static_cast<double>(p.S[i - 1]), -static_cast<int>(p.L[i - 1]));
        double cur = std::ldexp(static_cast<double>(p.S[i]), -static_cast<int>(p.L[i]));
        if (!(cur < prev)) throw ContinuityError("probe tail 2^-L S is not strictly decreasing");
    }
    return p;
}

ContinuityProbe default_probe(int fiber_depth) {
    ProbeDecl d;
    d.L_pattern = "n";
    d.S_pattern = "n";
    d.epsilon = 0.1;
    d.n0 = 4;
    return make_probe(d, fiber_depth);
}

NecessaryResult check_necessary(const Tower& t, const std::vector<FiberPoint>& fibers,
                                const ContinuityThresholds& th) {
    NecessaryResult out;
    if (t.bounds.eta == -kInf) {
        out.v = Verdict3::Fails;
        out.evidence = "inf Re of the spectrum is -inf; 0 lies in every level set";
        return out;
    }
    if (fibers.empty()) {
        out.v = Verdict3::Inconclusive;
        out.evidence = "no fibers sampled";
        return out;
    }
    bool all_pass = true;
    for (const FiberPoint& f : fibers) {
        size_t depth = f.coords.size();
        size_t q0 = depth - depth / 4;
        double tail_min = kInf, tail_max = 0;
        for (size_t i = q0; i < depth; ++i) {
            double v = std::abs(1.0 - f.coords[i]);
            tail_min = std::min(tail_min, v);
            tail_max = std::max(tail_max, v);
        }
        if (tail_min > th.nec_fail) {
            out.v = Verdict3::Fails;
            out.witness = f;
            std::ostringstream ev;
            ev << "fiber [" << f.provenance << "] stays at |1-x_n| >= " << tail_min
               << " over the last quarter of " << depth - 1 << " levels";
            out.evidence = ev.str();
            return out;
        }
        double prev_max = 0;
        size_t p0 = depth - 2 * (depth / 4);
        for (size_t i = p0; i < q0; ++i)
            prev_max = std::max(prev_max, std::abs(1.0 - f.coords[i]));
        bool decreasing = tail_max <= prev_max + 1e-12;
        all_pass = all_pass && tail_max < th.nec_pass && decreasing;
    }
    if (all_pass) {
        out.v = Verdict3::Holds;
        std::ostringstream ev;
        ev << "eta = " << t.bounds.eta << " finite and all " << fibers.size()
           << " fiber tails below " << th.nec_pass << " and decreasing";
        out.evidence = ev.str();
    } else {
        out.v = Verdict3::Inconclusive;
        out.evidence = "fiber tails neither uniformly small nor stuck away from 1";
    }
    return out;
}

O2nResult check_sufficient_O2n(const Tower& t, const ContinuityThresholds& th) {
    O2nResult out;
    if (t.depth < 6) {
        out.v = Verdict3::Inconclusive;
        out.evidence = "needs tower depth >= 6";
        return out;
    }
    for (int n = 0; n <= t.depth; ++n) out.d.push_back(max_dist_to_one(t.spec, n));
    std::vector<double> c;
    for (int n = 0; n <= t.depth; ++n) c.push_back(std::ldexp(out.d[n], n));

    bool all_zero = true;
    for (double dn : out.d) all_zero = all_zero && dn == 0;
    if (all_zero) {
        out.v = Verdict3::Holds;
        out.C = 0;
        out.evidence = "level sets collapse to 1";
        return out;
    }
    double last4_max = 0, last4_min = kInf;
    for (int n = t.depth - 3; n <= t.depth; ++n) {
        last4_max = std::max(last4_max, c[n]);
        last4_min = std::min(last4_min, c[n]);
    }
    if (last4_min > 0 && last4_max / last4_min < th.o2n_ratio) {
        out.v = Verdict3::Holds;
        out.C = *std::max_element(c.begin(), c.end());
        std::ostringstream ev;
        ev << "2^n d_n stable over the last 4 levels (ratio " << last4_max / last4_min << " < "
           << th.o2n_ratio << "); C = " << out.C;
        out.evidence = ev.str();
        return out;
    }
    double d_max = *std::max_element(out.d.begin(), out.d.end());
    if (out.d.back() > 0.8 * d_max && out.d.back() > 0.1) {
        out.v = Verdict3::Fails;
        std::ostringstream ev;
        ev << "d_n does not tend to 0 (d_" << t.depth << " = " << out.d.back() << ")";
        out.evidence = ev.str();
        return out;
    }
    out.v = Verdict3::Inconclusive;
    out.evidence = "2^n d_n not yet stable at this depth";
    return out;
}

QuasiUniformResult quasi_uniform_test(const Tower& t, const std::vector<FiberPoint>& fibers,
                                      const ContinuityProbe& probe, const ContinuityThresholds& th) {
    (void)t;
    QuasiUniformResult out;
    out.label = probe.label;
    if (fibers.empty()) {
        out.v = Verdict3::Inconclusive;
        out.evidence = "no fibers sampled";
        return out;
    }
    size_t fiber_depth = fibers.front().coords.size() - 1;
    for (size_t i = 0; i < probe.L.size(); ++i)
        if (probe.L[i] > static_cast<long long>(fiber_depth))
            throw ContinuityError("probe entries exceed fiber depth");

    // Greedy lexicographic cover: walk indices upward from n0 and keep any
    // index that covers a still-uncovered fiber.
    std::vector<bool> covered(fibers.size(), false);
    size_t uncovered = fibers.size();
    for (int i = probe.n0 - 1; i < static_cast<int>(probe.L.size()); ++i) {
        if (static_cast<int>(out.indices.size()) >= th.quasi_max_k) break;
        bool useful = false;
        std::vector<size_t> hits;
        for (size_t f = 0; f < fibers.size(); ++f) {
            if (covered[f]) continue;
            double v = power_defect(fibers[f].coords[probe.L[i]], probe.S[i]);
            if (v < probe.epsilon) {
                hits.push_back(f);
                useful = true;
            }
        }
        if (useful) {
            out.indices.push_back(i + 1);  // report 1-based probe indices
            for (size_t f : hits) {
                covered[f] = true;
                --uncovered;
            }
            if (uncovered == 0) break;
        }
    }
    if (uncovered == 0) {
        out.v = Verdict3::Holds;
        std::ostringstream ev;
        ev << "all " << fibers.size() << " fibers covered with k = " << out.indices.size();
        out.evidence = ev.str();
        return out;
    }
    // Most resistant fiber: the one with the largest best value.
    size_t worst = 0;
    double worst_v = -1;
    for (size_t f = 0; f < fibers.size(); ++f) {
        if (covered[f]) continue;
        double best = kInf;
        for (int i = probe.n0 - 1; i < static_cast<int>(probe.L.size()); ++i)
            best = std::min(best, power_defect(fibers[f].coords[probe.L[i]], probe.S[i]));
        if (best > worst_v) {
            worst_v = best;
            worst = f;
        }
    }
    out.v = Verdict3::Fails;
    out.witness = fibers[worst];
    std::ostringstream ev;
    ev << uncovered << " fibers resist every probe entry at tested depth; worst min value "
       << worst_v << " >= " << probe.epsilon;
    out.evidence = ev.str();
    return out;
}

}  // namespace calkin
