#include "boundarylab/moebius.hpp"

#include <algorithm>
#include <cmath>

namespace bl {

cplx SpherePoint::value() const {
    if (is_infinity()) throw std::domain_error("SpherePoint: value() at infinity");
    return num / den;
}

double spherical_distance(const SpherePoint& p, const SpherePoint& q) {
    // |pq' - qp'| / (|p| |q|) with projective norms.
    const cplx cross = p.num * q.den - q.num * p.den;
    const double np = std::sqrt(std::norm(p.num) + std::norm(p.den));
    const double nq = std::sqrt(std::norm(q.num) + std::norm(q.den));
    return 2.0 * std::abs(cross) / (np * nq);
}

double spherical_distance(cplx z, cplx w) {
    return spherical_distance(SpherePoint::finite(z), SpherePoint::finite(w));
}

namespace {

// Projective rescale by the largest entry (exact as a sphere map), then
// det -> 1 when the determinant still carries signal, then fix the sign of
// the representative. Deep word products lose the determinant to
// cancellation; they stay max-entry scaled, which every projective
// operation tolerates.
void normalize_entries(cplx& a, cplx& b, cplx& c, cplx& d) {
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    if (scale < 1e-300) throw std::invalid_argument("MoebiusMap: zero matrix");
    a /= scale; b /= scale; c /= scale; d /= scale;
    const cplx det = a * d - b * c;
    if (std::abs(det) > 1e-13) {
        const cplx s = std::sqrt(det);
        a /= s; b /= s; c /= s; d /= s;
    }
    const cplx* entries[4] = {&a, &b, &c, &d};
    for (const cplx* e : entries) {
        if (std::abs(*e) > 1e-14) {
            bool flip = e->real() < -1e-14 ||
                        (std::abs(e->real()) <= 1e-14 && e->imag() < 0.0);
            if (flip) { a = -a; b = -b; c = -c; d = -d; }
            break;
        }
    }
}

}  // namespace

MoebiusMap::MoebiusMap(cplx a_, cplx b_, cplx c_, cplx d_) : a(a_), b(b_), c(c_), d(d_) {
    normalize_entries(a, b, c, d);
}

cplx MoebiusMap::apply(cplx z) const {
    const cplx den = c * z + d;
    if (std::abs(den) < 1e-300) throw std::domain_error("MoebiusMap: pole hit; use SpherePoint");
    return (a * z + b) / den;
}

SpherePoint MoebiusMap::apply(const SpherePoint& p) const {
    return {a * p.num + b * p.den, c * p.num + d * p.den};
}

bool MoebiusMap::near_identity(double tol) const {
    return std::abs(b) < tol && std::abs(c) < tol && std::abs(a - d) < tol;
}

MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g) {
    return MoebiusMap(f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d,
                      f.c * g.a + f.d * g.c, f.c * g.b + f.d * g.d);
}

DiskAutomorphism compose(const DiskAutomorphism& f, const DiskAutomorphism& g) {
    return DiskAutomorphism(compose(f.map, g.map));
}

const char* to_string(MapClass c) {
    switch (c) {
        case MapClass::Identity: return "identity";
        case MapClass::Elliptic: return "elliptic";
        case MapClass::Hyperbolic: return "hyperbolic";
        case MapClass::Parabolic: return "parabolic";
    }
    return "?";
}

DiskAutomorphism from_disk_params(double theta, cplx a) {
    if (std::abs(a) >= 1.0)
        throw std::invalid_argument("from_disk_params: |a| must be < 1");
    const cplx e = std::polar(1.0, theta);
    DiskAutomorphism m(MoebiusMap(-e, e * a, -std::conj(a), cplx(1.0, 0.0)));
    m.theta = theta;
    m.a = a;
    return m;
}

DiskAutomorphism real_hyperbolic(double c) {
    if (std::abs(c) >= 1.0) throw std::invalid_argument("real_hyperbolic: |c| must be < 1");
    return DiskAutomorphism(MoebiusMap(cplx(1, 0), cplx(c, 0), cplx(c, 0), cplx(1, 0)));
}

DiskAutomorphism hyperbolic_from_endpoints(cplx p, cplx q, double translation_length) {
    if (translation_length <= 0.0)
        throw std::invalid_argument("hyperbolic_from_endpoints: length must be positive");
    // Conjugate w -> lambda w (q -> 0, p -> infinity), lambda = e^length > 1.
    const double lam = std::exp(translation_length);
    const cplx den = q - p;
    MoebiusMap m((-p * lam + q) / den, (p * lam * q - p * q) / den,
                 (cplx(1.0, 0.0) - lam) / den, (lam * q - p) / den);
    return DiskAutomorphism(m);
}

DiskAutomorphism parabolic_at(cplx p, double strength) {
    if (strength == 0.0) throw std::invalid_argument("parabolic_at: zero strength");
    // C(z) = i (p + z)/(p - z) maps the disk to the upper half-plane, p -> inf.
    const MoebiusMap C(cplx(0, 1), cplx(0, 1) * p, cplx(-1, 0), p);
    const MoebiusMap T(cplx(1, 0), cplx(strength, 0), cplx(0, 0), cplx(1, 0));
    return DiskAutomorphism(compose(C.inverse(), compose(T, C)));
}

bool is_disk_preserving(const MoebiusMap& m, double tol, int n_samples) {
    for (int k = 0; k < n_samples; ++k) {
        const double t = kTwoPi * k / n_samples;
        const cplx w = m.apply(std::polar(1.0, t));
        if (std::abs(std::abs(w) - 1.0) > tol) return false;
    }
    // Orientation: an interior point must stay interior.
    cplx z0(0.17, -0.05);
    if (std::abs(m.c * z0 + m.d) < 1e-12) z0 = cplx(-0.21, 0.13);
    return std::abs(m.apply(z0)) < 1.0 + tol;
}

MapClass classify(const DiskAutomorphism& m, double eps_cls) {
    const MoebiusMap& M = m.map;
    if (M.near_identity(1e-12)) return MapClass::Identity;
    const cplx tr = M.trace();
    // det-1 representatives of disk automorphisms have real trace up to noise.
    if (std::abs(tr.imag()) > 1e-6 || !is_disk_preserving(M))
        throw std::domain_error("classify: map does not preserve the unit disk");
    const double t = std::abs(tr.real());
    if (std::abs(t - 2.0) <= eps_cls) return MapClass::Parabolic;
    return t > 2.0 ? MapClass::Hyperbolic : MapClass::Elliptic;
}

FixedPoints fixed_points(const MoebiusMap& m) {
    if (m.near_identity(1e-12))
        throw std::domain_error("fixed_points: identity fixes every point");
    FixedPoints out;
    const cplx A = m.c;
    const cplx B = m.d - m.a;
    const cplx C = -m.b;
    const double scale = std::max({std::abs(A), std::abs(B), std::abs(C)});
    if (std::abs(A) <= 1e-14 * scale) {
        // Affine case: one fixed point at infinity.
        if (std::abs(B) <= 1e-14 * scale) {
            out.points.push_back(SpherePoint::infinity());
            out.double_point = true;
            return out;
        }
        out.points.push_back(SpherePoint::finite(-C / B));
        out.points.push_back(SpherePoint::infinity());
        return out;
    }
    const cplx disc = B * B - 4.0 * A * C;
    // Roots closer than ~1e-6 are merged; the discriminant of a genuine
    // parabolic carries rounding noise near 1e-16 * scale^2.
    if (std::abs(disc) <= 1e-12 * scale * scale) {
        out.points.push_back(SpherePoint::finite(-B / (2.0 * A)));
        out.double_point = true;
        return out;
    }
    // Cancellation-safe quadratic: pick the root of B +/- sqrt(disc)
    // with the larger modulus, derive the mate from the product.
    cplx sq = std::sqrt(disc);
    if (std::real(std::conj(B) * sq) < 0.0) sq = -sq;
    const cplx q = -0.5 * (B + sq);
    out.points.push_back(SpherePoint::finite(q / A));
    out.points.push_back(SpherePoint::finite(C / q));
    return out;
}

std::pair<cplx, cplx> hyperbolic_fixed_points(const DiskAutomorphism& m) {
    if (classify(m) != MapClass::Hyperbolic)
        throw std::domain_error("hyperbolic_fixed_points: map is not hyperbolic");
    FixedPoints fp = fixed_points(m.map);
    cplx p = fp.points[0].value() / std::abs(fp.points[0].value());
    cplx q = fp.points[1].value() / std::abs(fp.points[1].value());
    // Attracting first: the derivative modulus at the attracting point is < 1.
    const cplx dp = m.map.c * p + m.map.d;
    if (std::abs(1.0 / (dp * dp)) > 1.0) std::swap(p, q);
    return {p, q};
}

}  // namespace bl
