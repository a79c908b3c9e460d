#include "calkin/svg.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace calkin {

namespace {

// Merge occupied cells into per-row runs and emit one rect per run.
void emit_cylinder_rects(std::ostringstream& os, const CylinderRaster& r, double x0, double y0,
                         double w, double h, const char* fill, double opacity) {
    double sx = w / r.theta_cells();
    double sy = h / std::max<long>(1, r.rows());
    for (long j = r.j_lo(); j <= r.j_hi(); ++j) {
        long k = 0;
        while (k < r.theta_cells()) {
            if (!r.at(j, k)) { ++k; continue; }
            long start = k;
            while (k < r.theta_cells() && r.at(j, k)) ++k;
            double x = x0 + start * sx;
            double y = y0 + (r.j_hi() - j) * sy;
            os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << (k - start) * sx
               << "\" height=\"" << sy << "\" fill=\"" << fill << "\" fill-opacity=\"" << opacity
               << "\"/>\n";
        }
    }
}

void emit_planar(std::ostringstream& os, const PlanarRaster& p, const PlanarRaster& anti,
                 double x0, double y0, double w) {
    double s = w / p.size;
    auto emit = [&](const PlanarRaster& q, const char* fill, double opacity) {
        for (int iy = 0; iy < q.size; ++iy) {
            int ix = 0;
            while (ix < q.size) {
                if (!q.at(ix, iy)) { ++ix; continue; }
                int start = ix;
                while (ix < q.size && q.at(ix, iy)) ++ix;
                os << "<rect x=\"" << x0 + start * s << "\" y=\"" << y0 + (q.size - 1 - iy) * s
                   << "\" width=\"" << (ix - start) * s << "\" height=\"" << s << "\" fill=\""
                   << fill << "\" fill-opacity=\"" << opacity << "\"/>\n";
            }
        }
    };
    emit(p, "#1a4d8f", 0.85);
    emit(anti, "#c0392b", 0.9);
}

}  // namespace

std::string level_svg(const Level& level) {
    const double W = 860, H = 440, pad = 20;
    const double panel = (W - 3 * pad) / 2;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << pad << "\" y=\"16\" font-family=\"monospace\" font-size=\"13\">level n="
       << level.n << "  ext_rank=" << level.ext_rank;
    if (level.finite_points) os << "  |set|=" << level.finite_points->size();
    os << "</text>\n";

    double top = 30, ph = H - top - pad;
    // Log-cylinder view.
    os << "<rect x=\"" << pad << "\" y=\"" << top << "\" width=\"" << panel << "\" height=\"" << ph
       << "\" fill=\"#f7f7f7\" stroke=\"#999\"/>\n";
    emit_cylinder_rects(os, level.region, pad, top, panel, ph, "#1a4d8f", 0.85);
    emit_cylinder_rects(os, level.antipodal, pad, top, panel, ph, "#c0392b", 0.9);

    // Planar view, fixed viewport 1.5x the outer radius.
    double px0 = 2 * pad + panel;
    os << "<rect x=\"" << px0 << "\" y=\"" << top << "\" width=\"" << panel << "\" height=\"" << ph
       << "\" fill=\"#f7f7f7\" stroke=\"#999\"/>\n";
    int psize = std::min(512, level.region.theta_cells());
    PlanarRaster p = to_planar(level.region, psize);
    PlanarRaster a = to_planar(level.antipodal, psize);
    double side = std::min(panel, ph);
    emit_planar(os, p, a, px0, top, side);
    double scale = side / (2 * p.half_width);
    for (auto s : level.component_samples) {
        double cx = px0 + (s.real() + p.half_width) * scale;
        double cy = top + (p.half_width - s.imag()) * scale;
        os << "<circle cx=\"" << cx << "\" cy=\"" << cy
           << "\" r=\"3\" fill=\"none\" stroke=\"#27ae60\" stroke-width=\"1.5\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void write_level_svg(const Level& level, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << level_svg(level);
}

}  // namespace calkin
