#pragma once

#include <sstream>
#include <string>

#include "boundarylab/deck.hpp"
#include "boundarylab/systems.hpp"

namespace bl {

// Static SVG plots on a fixed 1000 px viewport, unit circle inscribed.
// All numbers are written with fixed precision so output is byte-stable.
class SvgCanvas {
  public:
    SvgCanvas();

    void add_unit_circle();
    void add_boundary_arc(const Arc& arc, const std::string& color, double width = 3.0);
    void add_geodesic(const Geodesic& g, const std::string& color, double width = 1.0);
    void add_point(cplx z, const std::string& color, double radius = 2.0);
    void add_polyline(const std::vector<cplx>& pts, const std::string& color,
                      double width = 1.0);

    std::string finish();

    // Depth palette used by the cover plots.
    static std::string depth_color(int depth);

  private:
    std::ostringstream body_;
    double px(double x) const;
    double py(double y) const;
};

std::string render_cover_svg(const SchottkySystem& sys, int max_depth,
                             std::size_t word_cap = 1000000);
std::string render_system_svg(const SchottkySystem& sys, int cover_depth, int orbit_len);
std::string render_reef_svg(const ReefGeometry& geo);

}  // namespace bl
