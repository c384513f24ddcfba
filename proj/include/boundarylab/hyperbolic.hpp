#pragma once

#include <functional>
#include <utility>
#include <variant>

#include "boundarylab/moebius.hpp"

namespace bl {

// Angle in [0, 2pi).
double normalize_angle(double theta);

// CCW distance from angle a to angle b, in [0, 2pi).
double ccw_gap(double a, double b);

struct DiskPoint {
    cplx z{0.0, 0.0};
    DiskPoint() = default;
    explicit DiskPoint(cplx z_);
};

struct BoundaryPoint {
    double theta = 0.0;  // represents e^{i theta}
    BoundaryPoint() = default;
    explicit BoundaryPoint(double t) : theta(normalize_angle(t)) {}
    cplx point() const { return std::polar(1.0, theta); }
};

// Closed arc [lo, lo + len] traversed counterclockwise; len in [0, 2pi].
// len == 0 is a degenerate (single point) arc.
struct Arc {
    double lo = 0.0;
    double len = 0.0;

    static Arc from_endpoints_ccw(double a, double b);
    static Arc full_circle() { return {0.0, kTwoPi}; }

    double hi() const { return normalize_angle(lo + len); }
    bool degenerate(double tol = 0.0) const { return len <= tol; }
    bool contains(double theta, double tol = 0.0) const;
    bool contains(const Arc& other, double tol = 0.0) const;
    bool overlaps(const Arc& other, double tol = 0.0) const;
    double midpoint() const { return normalize_angle(lo + 0.5 * len); }
};

struct Geodesic {
    struct Diameter { double direction; };          // through e^{i dir}, e^{i(dir+pi)}
    struct Orthocircle { cplx center; double radius; };
    std::variant<Diameter, Orthocircle> rep;
    BoundaryPoint e1, e2;  // endpoints on the circle

    bool is_diameter() const { return std::holds_alternative<Diameter>(rep); }
    // Signed/absolute Euclidean offset from the carrier curve.
    double curve_offset(cplx z) const;
    bool passes_through(cplx z, double tol = 1e-9) const;
};

// Unique geodesic through two distinct interior points.
Geodesic geodesic_through(cplx z, cplx w);
// Geodesic with the two prescribed boundary endpoints.
Geodesic geodesic_between_boundary(double theta1, double theta2);

// Axis of a hyperbolic automorphism.
Geodesic axis(const DiskAutomorphism& m);

struct HyperbolicDisk {
    DiskPoint center;
    double radius = 0.0;  // hyperbolic units
};

struct Horodisk {
    BoundaryPoint base;
    double R = 1.0;
};

struct StolzAngle {
    struct Euclidean { double alpha; double rho; };
    // Spine is the geodesic ray from `spine_start` to the base point.
    struct Hyperbolic { cplx spine_start; double r; };
    std::variant<Euclidean, Hyperbolic> rep;
    BoundaryPoint base;

    static StolzAngle euclidean(BoundaryPoint base, double alpha, double rho);
    static StolzAngle hyperbolic_radial(BoundaryPoint base, double r);
};

struct Crosscut {
    enum class Kind { GeodesicArc, Horocycle };
    Kind kind = Kind::GeodesicArc;
    BoundaryPoint e1, e2;  // equal iff degenerate (horocycle)
    double horo_R = 0.0;   // horocycle parameter when degenerate

    static Crosscut geodesic(double theta1, double theta2);
    static Crosscut horocycle(double theta, double R);
    bool degenerate() const { return kind == Kind::Horocycle; }
    // Boundary arc of the crosscut neighbourhood on the side away from 0.
    Arc cutoff_arc() const;
};

// Lazily generated chain of crosscuts; element n produced on demand.
struct NullChain {
    std::function<Crosscut(int)> at;
};

double hyp_distance(cplx z, cplx w);
double hyp_distance(const DiskPoint& z, const DiskPoint& w) ;

std::pair<cplx, double> hyperbolic_disk_euclidean(const HyperbolicDisk& d);
std::pair<cplx, double> horodisk_euclidean(const Horodisk& h);

bool stolz_contains(const StolzAngle& s, cplx z);

// Distance from z to the full geodesic.
double dist_to_geodesic(cplx z, const Geodesic& g);
// Distance from z to the geodesic ray from `start` landing at e^{i theta}.
double dist_to_ray(cplx z, cplx start, double theta);

bool is_null_chain_prefix(const NullChain& chain, int n);

// Image of a boundary arc under a disk automorphism (boundary homeomorphism,
// orientation preserving).
Arc map_arc(const DiskAutomorphism& m, const Arc& arc);
double map_boundary_angle(const DiskAutomorphism& m, double theta);

}  // namespace bl
