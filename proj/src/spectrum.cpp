#include "calkin/spectrum.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <map>
#include <sstream>

namespace calkin {

const char* primitive_kind(const Primitive& p) {
    struct V {
        const char* operator()(const PointPrim&) const { return "point"; }
        const char* operator()(const VSegmentPrim&) const { return "vsegment"; }
        const char* operator()(const HSegmentPrim&) const { return "hsegment"; }
        const char* operator()(const RectPrim&) const { return "rect"; }
        const char* operator()(const VLatticePrim&) const { return "vlattice"; }
        const char* operator()(const VLinePrim&) const { return "vline"; }
        const char* operator()(const PeriodicBandPrim&) const { return "periodic_band"; }
    };
    return std::visit(V{}, p);
}

Extent re_extent(const Primitive& p) {
    struct V {
        Extent operator()(const PointPrim& q) const { return {q.re, q.re}; }
        Extent operator()(const VSegmentPrim& q) const { return {q.re, q.re}; }
        Extent operator()(const HSegmentPrim& q) const { return {q.re_lo, q.re_hi}; }
        Extent operator()(const RectPrim& q) const { return {q.re_lo, q.re_hi}; }
        Extent operator()(const VLatticePrim& q) const { return {q.re, q.re}; }
        Extent operator()(const VLinePrim& q) const { return {q.re, q.re}; }
        Extent operator()(const PeriodicBandPrim& q) const { return {q.re_lo, q.re_hi}; }
    };
    return std::visit(V{}, p);
}

Extent im_extent(const Primitive& p) {
    struct V {
        Extent operator()(const PointPrim& q) const { return {q.im, q.im}; }
        Extent operator()(const VSegmentPrim& q) const { return {q.im_lo, q.im_hi}; }
        Extent operator()(const HSegmentPrim& q) const { return {q.im, q.im}; }
        Extent operator()(const RectPrim& q) const { return {q.im_lo, q.im_hi}; }
        Extent operator()(const VLatticePrim&) const { return {-kInf, kInf}; }
        Extent operator()(const VLinePrim&) const { return {-kInf, kInf}; }
        Extent operator()(const PeriodicBandPrim&) const { return {-kInf, kInf}; }
    };
    return std::visit(V{}, p);
}

namespace {

bool finite(double x) { return std::isfinite(x); }

void require(bool cond, const std::string& msg) {
    if (!cond) throw SpecError(msg);
}

void validate_primitive(const Primitive& p) {
    std::visit(
        [](const auto& q) {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, PointPrim>) {
                require(finite(q.re) && finite(q.im), "point coordinates must be finite");
            } else if constexpr (std::is_same_v<T, VSegmentPrim>) {
                require(finite(q.re), "vsegment re must be finite");
                require(!std::isnan(q.im_lo) && !std::isnan(q.im_hi), "vsegment im bounds must not be NaN");
                require(q.im_lo < kInf && q.im_hi > -kInf, "vsegment im bounds degenerate at infinity");
                require(q.im_lo <= q.im_hi, "vsegment needs im_lo <= im_hi");
            } else if constexpr (std::is_same_v<T, HSegmentPrim>) {
                require(finite(q.re_hi), "hsegment re_hi must be finite");
                require(!std::isnan(q.re_lo) && q.re_lo < kInf, "hsegment re_lo must be finite or -inf");
                require(q.re_lo <= q.re_hi, "hsegment needs re_lo <= re_hi");
                require(finite(q.im), "hsegment im must be finite");
            } else if constexpr (std::is_same_v<T, RectPrim>) {
                require(finite(q.re_hi), "rect re_hi must be finite");
                require(!std::isnan(q.re_lo) && q.re_lo < kInf, "rect re_lo must be finite or -inf");
                require(q.re_lo <= q.re_hi, "rect needs re_lo <= re_hi");
                require(!std::isnan(q.im_lo) && !std::isnan(q.im_hi), "rect im bounds must not be NaN");
                require(q.im_lo < kInf && q.im_hi > -kInf, "rect im bounds degenerate at infinity");
                require(q.im_lo <= q.im_hi, "rect needs im_lo <= im_hi");
            } else if constexpr (std::is_same_v<T, VLatticePrim>) {
                require(finite(q.re) && finite(q.im_base), "vlattice re/im_base must be finite");
                require(finite(q.im_step) && q.im_step > 0, "vlattice im_step must be positive");
            } else if constexpr (std::is_same_v<T, VLinePrim>) {
                require(finite(q.re), "vline re must be finite");
            } else if constexpr (std::is_same_v<T, PeriodicBandPrim>) {
                require(finite(q.re_hi), "periodic_band re_hi must be finite");
                require(!std::isnan(q.re_lo) && q.re_lo < kInf, "periodic_band re_lo must be finite or -inf");
                require(q.re_lo <= q.re_hi, "periodic_band needs re_lo <= re_hi");
                require(finite(q.period) && q.period > 0, "periodic_band period must be positive");
                require(!q.im_intervals.empty(), "periodic_band needs at least one im interval");
                for (auto [a, b] : q.im_intervals) {
                    require(finite(a) && finite(b), "periodic_band interval bounds must be finite");
                    require(a <= b, "periodic_band interval needs lo <= hi");
                }
            }
        },
        p);
}

}  // namespace

void validate(const SpectrumSpec& spec) {
    require(!spec.primitives.empty(), "empty primitive list");
    for (const auto& p : spec.primitives) {
        validate_primitive(p);
        require(re_extent(p).hi < kInf, "primitive unbounded in Re from above");
    }
}

StripBounds strip_bounds(const SpectrumSpec& spec) {
    StripBounds b{-kInf, kInf};
    for (const auto& p : spec.primitives) {
        Extent e = re_extent(p);
        b.zeta = std::max(b.zeta, e.hi);
        b.eta = std::min(b.eta, e.lo);
    }
    return b;
}

// ---------------------------------------------------------------------------
// Sections

namespace {

// One primitive's contribution to a section.
struct Piece {
    enum class Kind { None, Interval, HalfLine, FullLine, Lattice, Periodic };
    Kind kind = Kind::None;
    double lo = 0, hi = 0;        // Interval
    double end = 0; bool up = true;  // HalfLine
    double base = 0, step = 0;    // Lattice
    double period = 0;
    std::vector<std::pair<double, double>> per_intervals;
};

Piece piece_at(const Primitive& p, double s) {
    Extent re = re_extent(p);
    if (s < re.lo || s > re.hi) return {};
    Piece out;
    std::visit(
        [&](const auto& q) {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, PointPrim>) {
                out.kind = Piece::Kind::Interval;
                out.lo = out.hi = q.im;
            } else if constexpr (std::is_same_v<T, VSegmentPrim>) {
                if (q.im_lo == -kInf && q.im_hi == kInf) {
                    out.kind = Piece::Kind::FullLine;
                } else if (q.im_hi == kInf) {
                    out.kind = Piece::Kind::HalfLine;
                    out.end = q.im_lo;
                    out.up = true;
                } else if (q.im_lo == -kInf) {
                    out.kind = Piece::Kind::HalfLine;
                    out.end = q.im_hi;
                    out.up = false;
                } else {
                    out.kind = Piece::Kind::Interval;
                    out.lo = q.im_lo;
                    out.hi = q.im_hi;
                }
            } else if constexpr (std::is_same_v<T, HSegmentPrim>) {
                out.kind = Piece::Kind::Interval;
                out.lo = out.hi = q.im;
            } else if constexpr (std::is_same_v<T, RectPrim>) {
                if (q.im_lo == -kInf && q.im_hi == kInf) {
                    out.kind = Piece::Kind::FullLine;
                } else if (q.im_hi == kInf) {
                    out.kind = Piece::Kind::HalfLine;
                    out.end = q.im_lo;
                    out.up = true;
                } else if (q.im_lo == -kInf) {
                    out.kind = Piece::Kind::HalfLine;
                    out.end = q.im_hi;
                    out.up = false;
                } else {
                    out.kind = Piece::Kind::Interval;
                    out.lo = q.im_lo;
                    out.hi = q.im_hi;
                }
            } else if constexpr (std::is_same_v<T, VLatticePrim>) {
                out.kind = Piece::Kind::Lattice;
                out.base = q.im_base;
                out.step = q.im_step;
            } else if constexpr (std::is_same_v<T, VLinePrim>) {
                out.kind = Piece::Kind::FullLine;
            } else if constexpr (std::is_same_v<T, PeriodicBandPrim>) {
                out.kind = Piece::Kind::Periodic;
                out.period = q.period;
                out.per_intervals = q.im_intervals;
            }
        },
        p);
    return out;
}

std::vector<std::pair<double, double>> merge_intervals(std::vector<std::pair<double, double>> v) {
    std::sort(v.begin(), v.end());
    std::vector<std::pair<double, double>> out;
    for (auto iv : v) {
        if (!out.empty() && iv.first <= out.back().second) {
            out.back().second = std::max(out.back().second, iv.second);
        } else {
            out.push_back(iv);
        }
    }
    return out;
}

}  // namespace

Section section_at(const SpectrumSpec& spec, double s) {
    std::vector<Piece> pieces;
    for (const auto& p : spec.primitives) {
        Piece q = piece_at(p, s);
        if (q.kind != Piece::Kind::None) pieces.push_back(std::move(q));
    }
    Section out;
    if (pieces.empty()) return out;

    for (const auto& q : pieces)
        if (q.kind == Piece::Kind::FullLine) {
            out.kind = Section::Kind::FullLine;
            return out;
        }

    // Opposite half-lines that overlap cover the whole line.
    double up_end = kInf, down_end = -kInf;
    bool has_up = false, has_down = false;
    std::vector<std::pair<double, double>> intervals;
    std::vector<Piece> lattices, periodics;
    for (const auto& q : pieces) {
        switch (q.kind) {
            case Piece::Kind::HalfLine:
                if (q.up) { has_up = true; up_end = std::min(up_end, q.end); }
                else { has_down = true; down_end = std::max(down_end, q.end); }
                break;
            case Piece::Kind::Interval:
                intervals.emplace_back(q.lo, q.hi);
                break;
            case Piece::Kind::Lattice: lattices.push_back(q); break;
            case Piece::Kind::Periodic: periodics.push_back(q); break;
            default: break;
        }
    }
    if (has_up && has_down && down_end >= up_end) {
        out.kind = Section::Kind::FullLine;
        return out;
    }
    if (has_up || has_down) {
        if (has_up && has_down) { out.kind = Section::Kind::Mixed; return out; }
        // Intervals inside the half-line are absorbed; anything else is mixed.
        double end = has_up ? up_end : down_end;
        for (auto [lo, hi] : intervals) {
            bool inside = has_up ? (lo >= end) : (hi <= end);
            if (inside) continue;
            bool touches = has_up ? (hi >= end) : (lo <= end);
            if (touches) { end = has_up ? std::min(end, lo) : std::max(end, hi); continue; }
            out.kind = Section::Kind::Mixed;
            return out;
        }
        if (!lattices.empty() || !periodics.empty()) {
            out.kind = Section::Kind::Mixed;
            return out;
        }
        out.kind = Section::Kind::HalfLine;
        out.end = end;
        out.upward = has_up;
        return out;
    }
    if (!lattices.empty()) {
        if (!intervals.empty() || !periodics.empty() || lattices.size() > 1) {
            // A lone point sitting on the lattice is absorbed.
            if (periodics.empty() && lattices.size() == 1) {
                const Piece& L = lattices.front();
                bool all_on = true;
                for (auto [lo, hi] : intervals) {
                    double k = std::round((lo - L.base) / L.step);
                    if (lo != hi || std::abs(L.base + k * L.step - lo) > 1e-12 * std::max(1.0, std::abs(lo)))
                        all_on = false;
                }
                if (all_on) {
                    out.kind = Section::Kind::Lattice;
                    out.base = L.base;
                    out.step = L.step;
                    return out;
                }
            }
            out.kind = Section::Kind::Mixed;
            return out;
        }
        out.kind = Section::Kind::Lattice;
        out.base = lattices.front().base;
        out.step = lattices.front().step;
        return out;
    }
    if (!periodics.empty()) {
        if (!intervals.empty()) { out.kind = Section::Kind::Mixed; return out; }
        bool same = true;
        for (const auto& q : periodics) same = same && q.period == periodics.front().period;
        if (!same) { out.kind = Section::Kind::Mixed; return out; }
        out.kind = Section::Kind::Periodic;
        out.period = periodics.front().period;
        std::vector<std::pair<double, double>> ivs;
        for (const auto& q : periodics)
            for (auto iv : q.per_intervals) ivs.push_back(iv);
        out.per_intervals = merge_intervals(std::move(ivs));
        return out;
    }
    out.kind = Section::Kind::Intervals;
    out.intervals = merge_intervals(std::move(intervals));
    return out;
}

// ---------------------------------------------------------------------------
// Document parsing

namespace {

struct Value {
    enum class Kind { Number, String, Array };
    Kind kind = Kind::Number;
    double num = 0;
    std::string str;
    std::vector<Value> array;
    int line = 0, column = 0;
};

struct Table {
    std::string kind;  // "primitive" | "model" | "probe" | "" (top level)
    std::map<std::string, Value> entries;
    int line = 0;
};

class Cursor {
public:
    explicit Cursor(const std::string& text) : text_(text) {}

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return eof() ? '\0' : text_[pos_]; }
    char get() {
        char c = peek();
        ++pos_;
        if (c == '\n') { ++line_; col_ = 1; } else { ++col_; }
        return c;
    }
    void skip_ws_and_comments() {
        while (!eof()) {
            char c = peek();
            if (c == '#') {
                while (!eof() && peek() != '\n') get();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                get();
            } else {
                break;
            }
        }
    }
    int line() const { return line_; }
    int column() const { return col_; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

private:
    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

std::string parse_bareword(Cursor& c) {
    std::string w;
    while (!c.eof()) {
        char ch = c.peek();
        if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' ||
            ch == '+' || ch == '.' || ch == ':')
            w.push_back(c.get());
        else
            break;
    }
    if (w.empty()) c.fail("expected a token");
    return w;
}

Value parse_value(Cursor& c);

Value parse_array(Cursor& c) {
    Value v;
    v.kind = Value::Kind::Array;
    v.line = c.line();
    v.column = c.column();
    c.get();  // '['
    c.skip_ws_and_comments();
    if (c.peek() == ']') { c.get(); return v; }
    for (;;) {
        v.array.push_back(parse_value(c));
        c.skip_ws_and_comments();
        char ch = c.peek();
        if (ch == ',') { c.get(); c.skip_ws_and_comments(); continue; }
        if (ch == ']') { c.get(); return v; }
        c.fail("expected ',' or ']' in array");
    }
}

Value parse_value(Cursor& c) {
    c.skip_ws_and_comments();
    Value v;
    v.line = c.line();
    v.column = c.column();
    char ch = c.peek();
    if (ch == '"') {
        c.get();
        v.kind = Value::Kind::String;
        while (!c.eof() && c.peek() != '"') v.str.push_back(c.get());
        if (c.eof()) c.fail("unterminated string");
        c.get();
        return v;
    }
    if (ch == '[') return parse_array(c);
    std::string w = parse_bareword(c);
    std::string lw = w;
    std::transform(lw.begin(), lw.end(), lw.begin(), [](unsigned char u) { return std::tolower(u); });
    v.kind = Value::Kind::Number;
    if (lw == "inf" || lw == "+inf") { v.num = kInf; return v; }
    if (lw == "-inf") { v.num = -kInf; return v; }
    errno = 0;
    char* endp = nullptr;
    v.num = std::strtod(w.c_str(), &endp);
    if (endp == w.c_str() || *endp != '\0')
        throw ParseError("invalid number '" + w + "'", v.line, v.column);
    return v;
}

std::vector<Table> parse_tables(const std::string& text) {
    Cursor c(text);
    std::vector<Table> tables;
    tables.push_back(Table{});  // top-level
    for (;;) {
        c.skip_ws_and_comments();
        if (c.eof()) break;
        if (c.peek() == '[') {
            int line = c.line();
            c.get();
            if (c.peek() != '[') c.fail("expected '[[' to open a table");
            c.get();
            c.skip_ws_and_comments();
            std::string kind = parse_bareword(c);
            c.skip_ws_and_comments();
            if (c.peek() != ']') c.fail("expected ']]' to close table header");
            c.get();
            if (c.peek() != ']') c.fail("expected ']]' to close table header");
            c.get();
            Table t;
            t.kind = kind;
            t.line = line;
            tables.push_back(std::move(t));
            continue;
        }
        int kl = c.line(), kc = c.column();
        std::string key = parse_bareword(c);
        c.skip_ws_and_comments();
        if (c.peek() != '=') throw ParseError("expected '=' after key '" + key + "'", kl, kc);
        c.get();
        Value v = parse_value(c);
        Table& t = tables.back();
        if (t.entries.count(key)) throw ParseError("duplicate key '" + key + "'", kl, kc);
        t.entries.emplace(std::move(key), std::move(v));
    }
    return tables;
}

double num_field(const Table& t, const std::string& key) {
    auto it = t.entries.find(key);
    if (it == t.entries.end())
        throw ParseError("missing key '" + key + "' in [[" + t.kind + "]]", t.line, 1);
    if (it->second.kind != Value::Kind::Number)
        throw ParseError("key '" + key + "' must be a number", it->second.line, it->second.column);
    return it->second.num;
}

Primitive parse_primitive(const Table& t, std::vector<std::string>& seen_keys) {
    auto it = t.entries.find("kind");
    if (it == t.entries.end() || it->second.kind != Value::Kind::String)
        throw ParseError("[[primitive]] requires kind=\"...\"", t.line, 1);
    const std::string& kind = it->second.str;
    seen_keys.push_back("kind");
    auto take = [&](const char* k) {
        seen_keys.emplace_back(k);
        return num_field(t, k);
    };
    if (kind == "point") return PointPrim{take("re"), take("im")};
    if (kind == "vsegment") return VSegmentPrim{take("re"), take("im_lo"), take("im_hi")};
    if (kind == "hsegment") return HSegmentPrim{take("re_lo"), take("re_hi"), take("im")};
    if (kind == "rect") return RectPrim{take("re_lo"), take("re_hi"), take("im_lo"), take("im_hi")};
    if (kind == "vlattice") return VLatticePrim{take("re"), take("im_base"), take("im_step")};
    if (kind == "vline") return VLinePrim{take("re")};
    if (kind == "periodic_band") {
        PeriodicBandPrim p;
        p.re_lo = take("re_lo");
        p.re_hi = take("re_hi");
        p.period = take("period");
        seen_keys.emplace_back("im_intervals");
        auto iv = t.entries.find("im_intervals");
        if (iv == t.entries.end() || iv->second.kind != Value::Kind::Array)
            throw ParseError("periodic_band requires im_intervals=[[lo,hi],...]", t.line, 1);
        for (const Value& pair : iv->second.array) {
            if (pair.kind != Value::Kind::Array || pair.array.size() != 2 ||
                pair.array[0].kind != Value::Kind::Number || pair.array[1].kind != Value::Kind::Number)
                throw ParseError("im_intervals entries must be [lo, hi]", pair.line, pair.column);
            p.im_intervals.emplace_back(pair.array[0].num, pair.array[1].num);
        }
        return p;
    }
    throw ParseError("unknown primitive kind '" + kind + "'", it->second.line, it->second.column);
}

void reject_unknown_keys(const Table& t, const std::vector<std::string>& allowed) {
    for (const auto& [key, val] : t.entries) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ParseError("unknown key '" + key + "' in [[" + t.kind + "]]", val.line, val.column);
    }
}

std::vector<long long> int_array(const Value& v) {
    std::vector<long long> out;
    for (const Value& e : v.array) {
        if (e.kind != Value::Kind::Number)
            throw ParseError("expected integer array", e.line, e.column);
        out.push_back(static_cast<long long>(std::llround(e.num)));
    }
    return out;
}

}  // namespace

Document parse_document(const std::string& text) {
    Document doc;
    for (const Table& t : parse_tables(text)) {
        if (t.kind.empty()) {
            for (const auto& [key, val] : t.entries) {
                if (key == "name" && val.kind == Value::Kind::String) {
                    doc.spec.name = val.str;
                } else {
                    throw ParseError("unknown top-level key '" + key + "'", val.line, val.column);
                }
            }
        } else if (t.kind == "primitive") {
            std::vector<std::string> seen;
            doc.spec.primitives.push_back(parse_primitive(t, seen));
            reject_unknown_keys(t, seen);
        } else if (t.kind == "model") {
            ModelDecl m;
            m.line = t.line;
            auto it = t.entries.find("kind");
            if (it == t.entries.end() || it->second.kind != Value::Kind::String)
                throw ParseError("[[model]] requires kind=\"...\"", t.line, 1);
            m.kind = it->second.str;
            std::vector<std::string> allowed{"kind"};
            if (auto p = t.entries.find("poly"); p != t.entries.end()) {
                allowed.emplace_back("poly");
                if (p->second.kind != Value::Kind::Array)
                    throw ParseError("poly must be an array", p->second.line, p->second.column);
                for (const Value& e : p->second.array) m.poly.push_back(e.num);
            }
            if (auto p = t.entries.find("laurent"); p != t.entries.end()) {
                allowed.emplace_back("laurent");
                if (p->second.kind != Value::Kind::Array)
                    throw ParseError("laurent must be an array", p->second.line, p->second.column);
                for (const Value& e : p->second.array) m.laurent.push_back(e.num);
            }
            if (auto p = t.entries.find("laurent_min"); p != t.entries.end()) {
                allowed.emplace_back("laurent_min");
                m.laurent_min = static_cast<long long>(std::llround(num_field(t, "laurent_min")));
            }
            reject_unknown_keys(t, allowed);
            doc.models.push_back(std::move(m));
        } else if (t.kind == "probe") {
            ProbeDecl p;
            p.line = t.line;
            std::vector<std::string> allowed{"L", "S", "epsilon", "n0"};
            if (auto it = t.entries.find("L"); it != t.entries.end()) {
                if (it->second.kind == Value::Kind::String) p.L_pattern = it->second.str;
                else if (it->second.kind == Value::Kind::Array) p.L_list = int_array(it->second);
                else throw ParseError("L must be a pattern string or list", it->second.line, it->second.column);
            } else {
                throw ParseError("[[probe]] requires L", t.line, 1);
            }
            if (auto it = t.entries.find("S"); it != t.entries.end()) {
                if (it->second.kind == Value::Kind::String) p.S_pattern = it->second.str;
                else if (it->second.kind == Value::Kind::Array) p.S_list = int_array(it->second);
                else throw ParseError("S must be a pattern string or list", it->second.line, it->second.column);
            } else {
                throw ParseError("[[probe]] requires S", t.line, 1);
            }
            if (t.entries.count("epsilon")) p.epsilon = num_field(t, "epsilon");
            if (t.entries.count("n0")) p.n0 = static_cast<int>(std::llround(num_field(t, "n0")));
            reject_unknown_keys(t, allowed);
            doc.probes.push_back(std::move(p));
        } else {
            throw ParseError("unknown table [[" + t.kind + "]]", t.line, 1);
        }
    }
    validate(doc.spec);
    return doc;
}

SpectrumSpec parse_spec(const std::string& text) { return parse_document(text).spec; }

namespace {

std::string fmt(double x) {
    if (x == kInf) return "inf";
    if (x == -kInf) return "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

std::string serialize_spec(const SpectrumSpec& spec) {
    std::ostringstream os;
    if (!spec.name.empty()) os << "name = \"" << spec.name << "\"\n";
    for (const auto& p : spec.primitives) {
        os << "[[primitive]]\n";
        std::visit(
            [&](const auto& q) {
                using T = std::decay_t<decltype(q)>;
                os << "kind = \"" << primitive_kind(p) << "\"\n";
                if constexpr (std::is_same_v<T, PointPrim>) {
                    os << "re = " << fmt(q.re) << "\nim = " << fmt(q.im) << "\n";
                } else if constexpr (std::is_same_v<T, VSegmentPrim>) {
                    os << "re = " << fmt(q.re) << "\nim_lo = " << fmt(q.im_lo)
                       << "\nim_hi = " << fmt(q.im_hi) << "\n";
                } else if constexpr (std::is_same_v<T, HSegmentPrim>) {
                    os << "re_lo = " << fmt(q.re_lo) << "\nre_hi = " << fmt(q.re_hi)
                       << "\nim = " << fmt(q.im) << "\n";
                } else if constexpr (std::is_same_v<T, RectPrim>) {
                    os << "re_lo = " << fmt(q.re_lo) << "\nre_hi = " << fmt(q.re_hi)
                       << "\nim_lo = " << fmt(q.im_lo) << "\nim_hi = " << fmt(q.im_hi) << "\n";
                } else if constexpr (std::is_same_v<T, VLatticePrim>) {
                    os << "re = " << fmt(q.re) << "\nim_base = " << fmt(q.im_base)
                       << "\nim_step = " << fmt(q.im_step) << "\n";
                } else if constexpr (std::is_same_v<T, VLinePrim>) {
                    os << "re = " << fmt(q.re) << "\n";
                } else if constexpr (std::is_same_v<T, PeriodicBandPrim>) {
                    os << "re_lo = " << fmt(q.re_lo) << "\nre_hi = " << fmt(q.re_hi) << "\nim_intervals = [";
                    for (size_t i = 0; i < q.im_intervals.size(); ++i) {
                        if (i) os << ", ";
                        os << "[" << fmt(q.im_intervals[i].first) << ", "
                           << fmt(q.im_intervals[i].second) << "]";
                    }
                    os << "]\nperiod = " << fmt(q.period) << "\n";
                }
            },
            p);
    }
    return os.str();
}

}  // namespace calkin
