#include "boundarylab/hyperbolic.hpp"

#include <algorithm>
#include <cmath>

namespace bl {

double normalize_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    return t;
}

double ccw_gap(double a, double b) { return normalize_angle(b - a); }

DiskPoint::DiskPoint(cplx z_) : z(z_) {
    if (std::abs(z_) >= 1.0) throw std::domain_error("DiskPoint: |z| must be < 1");
}

Arc Arc::from_endpoints_ccw(double a, double b) {
    Arc arc;
    arc.lo = normalize_angle(a);
    arc.len = ccw_gap(a, b);
    return arc;
}

bool Arc::contains(double theta, double tol) const {
    const double d = ccw_gap(lo, theta);
    return d <= len + tol || d >= kTwoPi - tol;
}

bool Arc::contains(const Arc& other, double tol) const {
    if (len >= kTwoPi - 1e-15) return true;
    double d = ccw_gap(lo, other.lo);
    if (d >= kTwoPi - tol) d = 0.0;
    return d <= len + tol && d + other.len <= len + tol;
}

bool Arc::overlaps(const Arc& other, double tol) const {
    return contains(other.lo, tol) || contains(other.hi(), tol) ||
           other.contains(lo, tol);
}

double Geodesic::curve_offset(cplx z) const {
    if (is_diameter()) {
        const double dir = std::get<Diameter>(rep).direction;
        return std::abs(std::imag(z * std::polar(1.0, -dir)));
    }
    const auto& oc = std::get<Orthocircle>(rep);
    return std::abs(std::abs(z - oc.center) - oc.radius);
}

bool Geodesic::passes_through(cplx z, double tol) const { return curve_offset(z) < tol; }

Geodesic geodesic_between_boundary(double theta1, double theta2) {
    const double t1 = normalize_angle(theta1), t2 = normalize_angle(theta2);
    Geodesic g;
    g.e1 = BoundaryPoint(t1);
    g.e2 = BoundaryPoint(t2);
    const double cosd = std::cos(t1 - t2);
    if (std::abs(cosd + 1.0) < 1e-14) {
        g.rep = Geodesic::Diameter{t1};
        return g;
    }
    if (std::abs(cosd - 1.0) < 1e-14)
        throw std::invalid_argument("geodesic_between_boundary: coincident endpoints");
    const cplx u = std::polar(1.0, t1), v = std::polar(1.0, t2);
    const cplx c = (u + v) / (1.0 + cosd);
    g.rep = Geodesic::Orthocircle{c, std::sqrt(std::norm(c) - 1.0)};
    return g;
}

Geodesic geodesic_through(cplx z, cplx w) {
    if (std::abs(z - w) < 1e-14)
        throw std::invalid_argument("geodesic_through: points must be distinct");
    if (std::abs(z) >= 1.0 || std::abs(w) >= 1.0)
        throw std::domain_error("geodesic_through: points must lie in the open disk");
    const double cross = std::imag(std::conj(z) * w);
    if (std::abs(cross) < 1e-14 && (std::abs(z) < 1e-14 || std::abs(w) < 1e-14 ||
                                    std::abs(std::arg(z / w)) < 1e-7 ||
                                    std::abs(std::abs(std::arg(z / w)) - kPi) < 1e-7)) {
        const double dir = std::abs(z) > std::abs(w) ? std::arg(z) : std::arg(w);
        Geodesic g;
        g.rep = Geodesic::Diameter{normalize_angle(dir)};
        g.e1 = BoundaryPoint(dir);
        g.e2 = BoundaryPoint(dir + kPi);
        return g;
    }
    // Orthocircle center from the two incidence equations
    //   2 Re(conj(c) p) = |p|^2 + 1,  p in {z, w}.
    const double a11 = 2.0 * z.real(), a12 = 2.0 * z.imag(), b1 = std::norm(z) + 1.0;
    const double a21 = 2.0 * w.real(), a22 = 2.0 * w.imag(), b2 = std::norm(w) + 1.0;
    const double det = a11 * a22 - a12 * a21;
    if (std::abs(det) < 1e-14) {
        // Collinear with the origin but caught late; fall back to a diameter.
        const double dir = std::abs(z) > std::abs(w) ? std::arg(z) : std::arg(w);
        Geodesic g;
        g.rep = Geodesic::Diameter{normalize_angle(dir)};
        g.e1 = BoundaryPoint(dir);
        g.e2 = BoundaryPoint(dir + kPi);
        return g;
    }
    const cplx c((a22 * b1 - a12 * b2) / det, (a11 * b2 - a21 * b1) / det);
    if (std::abs(c) > 1e9) {
        // Indistinguishable from a diameter at double precision.
        const double dir = std::abs(z) > std::abs(w) ? std::arg(z) : std::arg(w);
        Geodesic g;
        g.rep = Geodesic::Diameter{normalize_angle(dir)};
        g.e1 = BoundaryPoint(dir);
        g.e2 = BoundaryPoint(dir + kPi);
        return g;
    }
    const double r = std::sqrt(std::norm(c) - 1.0);
    Geodesic g;
    g.rep = Geodesic::Orthocircle{c, r};
    const double psi = std::arg(c);
    const double phi = std::acos(std::min(1.0, 1.0 / std::abs(c)));
    g.e1 = BoundaryPoint(psi - phi);
    g.e2 = BoundaryPoint(psi + phi);
    return g;
}

Geodesic axis(const DiskAutomorphism& m) {
    const auto [p, q] = hyperbolic_fixed_points(m);
    return geodesic_between_boundary(std::arg(p), std::arg(q));
}

double hyp_distance(cplx z, cplx w) {
    if (std::abs(z) >= 1.0 || std::abs(w) >= 1.0)
        throw std::domain_error("hyp_distance: points must lie in the open disk");
    const double m = std::abs(z - w) / std::abs(1.0 - std::conj(z) * w);
    return 2.0 * std::atanh(std::min(m, 1.0 - 1e-17));
}

double hyp_distance(const DiskPoint& z, const DiskPoint& w) { return hyp_distance(z.z, w.z); }

std::pair<cplx, double> hyperbolic_disk_euclidean(const HyperbolicDisk& d) {
    const double rho = std::tanh(0.5 * d.radius);
    const cplx z0 = d.center.z;
    const double s = 1.0 - rho * rho * std::norm(z0);
    const cplx center = z0 * (1.0 - rho * rho) / s;
    const double radius = rho * (1.0 - std::norm(z0)) / s;
    return {center, radius};
}

std::pair<cplx, double> horodisk_euclidean(const Horodisk& h) {
    if (h.R <= 0.0) throw std::invalid_argument("horodisk_euclidean: R must be positive");
    const double radius = h.R / (h.R + 1.0);
    return {(1.0 - radius) * h.base.point(), radius};
}

StolzAngle StolzAngle::euclidean(BoundaryPoint base, double alpha, double rho) {
    if (!(alpha > 0.0 && alpha < kPi / 2.0) || rho <= 0.0)
        throw std::invalid_argument("StolzAngle: need alpha in (0, pi/2) and rho > 0");
    StolzAngle s;
    s.base = base;
    s.rep = Euclidean{alpha, rho};
    return s;
}

StolzAngle StolzAngle::hyperbolic_radial(BoundaryPoint base, double r) {
    if (r <= 0.0) throw std::invalid_argument("StolzAngle: r must be positive");
    StolzAngle s;
    s.base = base;
    s.rep = Hyperbolic{cplx(0.0, 0.0), r};
    return s;
}

namespace {

double wrap_pi(double t) {
    double x = std::fmod(t + kPi, kTwoPi);
    if (x < 0) x += kTwoPi;
    return x - kPi;
}

}  // namespace

bool stolz_contains(const StolzAngle& s, cplx z) {
    if (std::abs(z) >= 1.0) return false;
    const cplx e = s.base.point();
    if (std::holds_alternative<StolzAngle::Euclidean>(s.rep)) {
        const auto& eu = std::get<StolzAngle::Euclidean>(s.rep);
        if (std::abs(e - z) >= eu.rho) return false;
        const double diff = wrap_pi(std::arg(e) - std::arg(e - z));
        return std::abs(diff) < eu.alpha;
    }
    const auto& hy = std::get<StolzAngle::Hyperbolic>(s.rep);
    return dist_to_ray(z, hy.spine_start, s.base.theta) < hy.r;
}

double dist_to_geodesic(cplx z, const Geodesic& g) {
    if (std::abs(z) >= 1.0) throw std::domain_error("dist_to_geodesic: z outside disk");
    const cplx u = g.e1.point(), v = g.e2.point();
    // Half-plane model with u -> 0, v -> infinity; the geodesic becomes the
    // ray orthogonal to the boundary line at 0.
    cplx g0;
    if (g.is_diameter()) {
        g0 = cplx(0.0, 0.0);
    } else {
        const auto& oc = std::get<Geodesic::Orthocircle>(g.rep);
        g0 = oc.center * (1.0 - oc.radius / std::abs(oc.center));
    }
    const cplx Tz = (z - u) / (z - v);
    const cplx Tg = (g0 - u) / (g0 - v);
    const double phi = wrap_pi(std::arg(Tz) - std::arg(Tg));
    const double c = std::cos(phi);
    if (c <= 1e-300) return std::numeric_limits<double>::infinity();
    return std::acosh(std::max(1.0, 1.0 / c));
}

double dist_to_ray(cplx z, cplx start, double theta) {
    if (std::abs(z) >= 1.0) throw std::domain_error("dist_to_ray: z outside disk");
    const cplx e = std::polar(1.0, theta);
    // Second endpoint of the full geodesic through `start` landing at e.
    const cplx fs = (e - start) / (1.0 - std::conj(start) * e);
    const cplx other = (-fs + start) / (1.0 - std::conj(start) * (-fs));
    const cplx Tz = (z - other) / (z - e);
    const cplx Ts = (start - other) / (start - e);
    const double phi = wrap_pi(std::arg(Tz) - std::arg(Ts));
    if (std::abs(Tz) >= std::abs(Ts)) {
        const double c = std::cos(phi);
        if (c <= 1e-300) return std::numeric_limits<double>::infinity();
        return std::acosh(std::max(1.0, 1.0 / c));
    }
    // Foot of the perpendicular falls before the ray start.
    return hyp_distance(z, start);
}

Crosscut Crosscut::geodesic(double theta1, double theta2) {
    Crosscut c;
    c.kind = Kind::GeodesicArc;
    c.e1 = BoundaryPoint(theta1);
    c.e2 = BoundaryPoint(theta2);
    if (std::abs(normalize_angle(theta1) - normalize_angle(theta2)) < 1e-15)
        throw std::invalid_argument("Crosscut::geodesic: use horocycle for degenerate cuts");
    return c;
}

Crosscut Crosscut::horocycle(double theta, double R) {
    if (R <= 0.0) throw std::invalid_argument("Crosscut::horocycle: R must be positive");
    Crosscut c;
    c.kind = Kind::Horocycle;
    c.e1 = c.e2 = BoundaryPoint(theta);
    c.horo_R = R;
    return c;
}

Arc Crosscut::cutoff_arc() const {
    if (degenerate()) return Arc{e1.theta, 0.0};
    const double d = ccw_gap(e1.theta, e2.theta);
    if (std::abs(d - kPi) < 1e-14) {
        // Diameter: take the CCW side from e1 to e2.
        return Arc::from_endpoints_ccw(e1.theta, e2.theta);
    }
    const Geodesic g = geodesic_between_boundary(e1.theta, e2.theta);
    const auto& oc = std::get<Geodesic::Orthocircle>(g.rep);
    const double psi = std::arg(oc.center);
    const double phi = std::acos(std::min(1.0, 1.0 / std::abs(oc.center)));
    return Arc::from_endpoints_ccw(psi - phi, psi + phi);
}

namespace {

struct CutCircle {
    bool line = false;  // diameter
    cplx c{0, 0};       // circle center, or unit normal direction for a line
    double r = 0.0;
};

CutCircle cut_circle(const Crosscut& cc) {
    CutCircle k;
    if (cc.degenerate()) {
        const auto [center, radius] = horodisk_euclidean({cc.e1, cc.horo_R});
        k.c = center;
        k.r = radius;
        return k;
    }
    const double d = ccw_gap(cc.e1.theta, cc.e2.theta);
    if (std::abs(d - kPi) < 1e-14) {
        k.line = true;
        k.c = std::polar(1.0, cc.e1.theta + kPi / 2.0);  // normal of the cut side
        return k;
    }
    const Geodesic g = geodesic_between_boundary(cc.e1.theta, cc.e2.theta);
    const auto& oc = std::get<Geodesic::Orthocircle>(g.rep);
    k.c = oc.center;
    k.r = oc.radius;
    return k;
}

bool circles_cross(const CutCircle& A, const CutCircle& B) {
    if (A.line && B.line) return true;  // two diameters always meet at 0
    if (A.line || B.line) {
        const CutCircle& L = A.line ? A : B;
        const CutCircle& C = A.line ? B : A;
        // Distance from circle center to the line through the origin.
        const double dist = std::abs(std::imag(C.c * std::conj(L.c * cplx(0, 1))));
        return dist <= C.r;
    }
    const double d = std::abs(A.c - B.c);
    return d <= A.r + B.r && d >= std::abs(A.r - B.r);
}

bool crosscuts_disjoint(const Crosscut& a, const Crosscut& b) {
    if (!a.degenerate() && !b.degenerate()) {
        // Orthocircles cross inside the disk iff endpoint pairs interleave.
        const Arc arc = Arc::from_endpoints_ccw(a.e1.theta, a.e2.theta);
        const bool in1 = arc.contains(b.e1.theta) && !arc.contains(b.e2.theta);
        const bool in2 = arc.contains(b.e2.theta) && !arc.contains(b.e1.theta);
        return !(in1 || in2);
    }
    return !circles_cross(cut_circle(a), cut_circle(b));
}

double neighbourhood_diameter(const Crosscut& c) {
    if (c.degenerate()) return 2.0 * horodisk_euclidean({c.e1, c.horo_R}).second;
    const Arc arc = c.cutoff_arc();
    if (arc.len >= kPi) return 2.0;
    return std::abs(std::polar(1.0, arc.lo) - std::polar(1.0, arc.hi()));
}

bool nested(const Crosscut& outer, const Crosscut& inner) {
    if (!crosscuts_disjoint(outer, inner)) return false;
    if (outer.degenerate()) {
        // Horodisk neighbourhood admits only smaller horodisks at the same base.
        return inner.degenerate() &&
               std::abs(inner.e1.theta - outer.e1.theta) < 1e-12 &&
               inner.horo_R < outer.horo_R;
    }
    const Arc oa = outer.cutoff_arc();
    if (inner.degenerate()) {
        const double d = ccw_gap(oa.lo, inner.e1.theta);
        return d > 0.0 && d < oa.len;  // base strictly inside the outer arc
    }
    const Arc ia = inner.cutoff_arc();
    return oa.contains(ia) && oa.len > ia.len;
}

}  // namespace

bool is_null_chain_prefix(const NullChain& chain, int n) {
    if (n <= 0) return true;
    std::vector<Crosscut> cuts;
    cuts.reserve(n);
    for (int i = 0; i < n; ++i) cuts.push_back(chain.at(i));

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double eps = 1e-12;
            const double a1 = cuts[i].e1.theta, a2 = cuts[i].e2.theta;
            const double b1 = cuts[j].e1.theta, b2 = cuts[j].e2.theta;
            for (double x : {b1, b2})
                for (double y : {a1, a2})
                    if (std::abs(wrap_pi(x - y)) < eps) return false;  // shared endpoint
            if (!crosscuts_disjoint(cuts[i], cuts[j])) return false;
        }
    }
    for (int i = 0; i + 1 < n; ++i) {
        if (!nested(cuts[i], cuts[i + 1])) return false;
        if (neighbourhood_diameter(cuts[i + 1]) >= neighbourhood_diameter(cuts[i]) + 1e-12)
            return false;
    }
    return true;
}

double map_boundary_angle(const DiskAutomorphism& m, double theta) {
    return normalize_angle(std::arg(m.apply(std::polar(1.0, theta))));
}

Arc map_arc(const DiskAutomorphism& m, const Arc& arc) {
    if (arc.degenerate(0.0)) return Arc{map_boundary_angle(m, arc.lo), 0.0};
    const double lo = map_boundary_angle(m, arc.lo);
    const double hi = map_boundary_angle(m, arc.hi());
    Arc out = Arc::from_endpoints_ccw(lo, hi);
    // Endpoints can collide in double precision both for strongly compressed
    // and for almost-full image arcs; the midpoint image disambiguates.
    const double mid = map_boundary_angle(m, arc.midpoint());
    if (!out.contains(mid, 1e-7)) out.len = kTwoPi - out.len;
    return out;
}

}  // namespace bl
