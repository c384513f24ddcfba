#include "boundarylab/svg.hpp"

#include <cmath>
#include <iomanip>

namespace bl {

namespace {

constexpr double kView = 1000.0;
constexpr double kRadius = 480.0;

std::string fmt(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << v;
    std::string s = os.str();
    if (s == "-0.000") s = "0.000";
    return s;
}

}  // namespace

SvgCanvas::SvgCanvas() = default;

double SvgCanvas::px(double x) const { return kView / 2.0 + kRadius * x; }
double SvgCanvas::py(double y) const { return kView / 2.0 - kRadius * y; }

void SvgCanvas::add_unit_circle() {
    body_ << "<circle cx=\"" << fmt(kView / 2) << "\" cy=\"" << fmt(kView / 2)
          << "\" r=\"" << fmt(kRadius)
          << "\" fill=\"none\" stroke=\"#222222\" stroke-width=\"1.5\"/>\n";
}

void SvgCanvas::add_boundary_arc(const Arc& arc, const std::string& color, double width) {
    if (arc.len <= 0.0) {
        add_point(std::polar(1.0, arc.lo), color, width);
        return;
    }
    const cplx p0 = std::polar(1.0, arc.lo);
    const cplx p1 = std::polar(1.0, arc.hi());
    const int large = arc.len > kPi ? 1 : 0;
    body_ << "<path d=\"M " << fmt(px(p0.real())) << " " << fmt(py(p0.imag())) << " A "
          << fmt(kRadius) << " " << fmt(kRadius) << " 0 " << large << " 0 "
          << fmt(px(p1.real())) << " " << fmt(py(p1.imag())) << "\" fill=\"none\" stroke=\""
          << color << "\" stroke-width=\"" << fmt(width) << "\"/>\n";
}

void SvgCanvas::add_geodesic(const Geodesic& g, const std::string& color, double width) {
    const cplx p0 = g.e1.point();
    const cplx p1 = g.e2.point();
    if (g.is_diameter()) {
        body_ << "<line x1=\"" << fmt(px(p0.real())) << "\" y1=\"" << fmt(py(p0.imag()))
              << "\" x2=\"" << fmt(px(p1.real())) << "\" y2=\"" << fmt(py(p1.imag()))
              << "\" stroke=\"" << color << "\" stroke-width=\"" << fmt(width) << "\"/>\n";
        return;
    }
    const auto& oc = std::get<Geodesic::Orthocircle>(g.rep);
    body_ << "<path d=\"M " << fmt(px(p0.real())) << " " << fmt(py(p0.imag())) << " A "
          << fmt(kRadius * oc.radius) << " " << fmt(kRadius * oc.radius) << " 0 0 1 "
          << fmt(px(p1.real())) << " " << fmt(py(p1.imag())) << "\" fill=\"none\" stroke=\""
          << color << "\" stroke-width=\"" << fmt(width) << "\"/>\n";
}

void SvgCanvas::add_point(cplx z, const std::string& color, double radius) {
    body_ << "<circle cx=\"" << fmt(px(z.real())) << "\" cy=\"" << fmt(py(z.imag()))
          << "\" r=\"" << fmt(radius) << "\" fill=\"" << color << "\"/>\n";
}

void SvgCanvas::add_polyline(const std::vector<cplx>& pts, const std::string& color,
                             double width) {
    if (pts.empty()) return;
    body_ << "<polyline points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
        if (i) body_ << " ";
        body_ << fmt(px(pts[i].real())) << "," << fmt(py(pts[i].imag()));
    }
    body_ << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << fmt(width)
          << "\"/>\n";
}

std::string SvgCanvas::finish() {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" "
           "width=\"1000\" height=\"1000\">\n"
        << body_.str() << "</svg>\n";
    return out.str();
}

std::string SvgCanvas::depth_color(int depth) {
    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                    "#bcbd22", "#17becf"};
    return palette[depth % 10];
}

std::string render_cover_svg(const SchottkySystem& sys, int max_depth,
                             std::size_t word_cap) {
    SvgCanvas canvas;
    canvas.add_unit_circle();
    for (int depth = 0; depth <= max_depth; ++depth) {
        const LimitSetCover cover = limit_set_cover(sys, depth, word_cap);
        for (const Arc& a : cover.arcs)
            canvas.add_boundary_arc(a, SvgCanvas::depth_color(depth),
                                    std::max(0.8, 4.0 - 0.4 * depth));
    }
    return canvas.finish();
}

std::string render_system_svg(const SchottkySystem& sys, int cover_depth, int orbit_len) {
    SvgCanvas canvas;
    canvas.add_unit_circle();
    for (const auto& g : sys.gens) {
        canvas.add_boundary_arc(g.source_arc, "#d62728", 4.0);
        canvas.add_boundary_arc(g.target_arc, "#1f77b4", 4.0);
        if (g.kind == MapClass::Hyperbolic)
            canvas.add_geodesic(axis(g.map), "#aaaaaa", 0.8);
    }
    for (int depth = 1; depth <= cover_depth; ++depth) {
        const LimitSetCover cover = limit_set_cover(sys, depth);
        for (const Arc& a : cover.arcs)
            canvas.add_boundary_arc(a, SvgCanvas::depth_color(depth), 2.0);
    }
    if (orbit_len > 0)
        for (const cplx& z : orbit(sys, orbit_len))
            canvas.add_point(z, "#333333", 1.6);
    return canvas.finish();
}

std::string render_reef_svg(const ReefGeometry& geo) {
    SvgCanvas canvas;
    // Reef plots are drawn in domain coordinates scaled into the viewport.
    for (const auto& line : geo.polylines) {
        std::vector<cplx> scaled;
        scaled.reserve(line.size());
        for (cplx z : line) scaled.push_back(z * 0.6);
        canvas.add_polyline(scaled, "#d62728", 2.0);
    }
    return canvas.finish();
}

}  // namespace bl
