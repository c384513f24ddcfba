#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bl {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Point on the Riemann sphere as a projective pair (num : den).
// Infinity is (1 : 0); formulas never divide by a vanishing denominator.
struct SpherePoint {
    cplx num{0.0, 0.0};
    cplx den{1.0, 0.0};

    static SpherePoint infinity() { return {cplx(1.0, 0.0), cplx(0.0, 0.0)}; }
    static SpherePoint finite(cplx z) { return {z, cplx(1.0, 0.0)}; }

    bool is_infinity(double tol = 1e-14) const {
        return std::abs(den) <= tol * std::max(1.0, std::abs(num));
    }
    // Finite value; throws if the point is (numerically) infinity.
    cplx value() const;
};

// Chordal metric on the sphere, range [0, 2].
double spherical_distance(const SpherePoint& p, const SpherePoint& q);
double spherical_distance(cplx z, cplx w);

// Normalized 2x2 complex matrix acting on the sphere, det = 1.
// The +/- sign ambiguity is resolved so the first entry with nonzero
// modulus has nonnegative real part (imaginary part breaks ties).
struct MoebiusMap {
    cplx a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};

    MoebiusMap() = default;
    MoebiusMap(cplx a_, cplx b_, cplx c_, cplx d_);

    static MoebiusMap identity() { return MoebiusMap(); }

    cplx det() const { return a * d - b * c; }
    cplx trace() const { return a + d; }

    cplx apply(cplx z) const;
    SpherePoint apply(const SpherePoint& p) const;

    MoebiusMap inverse() const { return MoebiusMap(d, -b, -c, a); }

    bool near_identity(double tol = 1e-12) const;
};

MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g);

enum class MapClass { Identity, Elliptic, Hyperbolic, Parabolic };

const char* to_string(MapClass c);

struct FixedPoints {
    std::vector<SpherePoint> points;   // one or two entries
    bool double_point = false;         // single fixed point of multiplicity two
};

// Moebius map known to preserve the unit disk. Optionally remembers the
// (theta, a) parameters it was constructed from.
struct DiskAutomorphism {
    MoebiusMap map;
    std::optional<double> theta;
    std::optional<cplx> a;

    DiskAutomorphism() = default;
    explicit DiskAutomorphism(const MoebiusMap& m) : map(m) {}

    cplx apply(cplx z) const { return map.apply(z); }
    DiskAutomorphism inverse() const { return DiskAutomorphism(map.inverse()); }
};

DiskAutomorphism compose(const DiskAutomorphism& f, const DiskAutomorphism& g);

// M(z) = e^{i theta} (a - z) / (1 - conj(a) z). Requires |a| < 1.
DiskAutomorphism from_disk_params(double theta, cplx a);

// The standard hyperbolic family M_c(z) = (z + c)/(1 + c z), c in (-1,1),
// with fixed points +/-1 and axis the real diameter.
DiskAutomorphism real_hyperbolic(double c);

// Hyperbolic disk automorphism with prescribed boundary fixed points and
// translation length along the axis (multiplier e^{length}).
DiskAutomorphism hyperbolic_from_endpoints(cplx attracting, cplx repelling,
                                           double translation_length);

// Parabolic disk automorphism fixing the boundary point p; `strength` is the
// translation amount of the half-plane conjugate w -> w + strength.
DiskAutomorphism parabolic_at(cplx p, double strength);

// Sampled check that m maps the disk onto itself and the circle to the circle.
bool is_disk_preserving(const MoebiusMap& m, double tol = 1e-9, int n_samples = 64);

// Elliptic/hyperbolic/parabolic trichotomy via the normalized real trace.
// Tolerance eps_cls applies to | |tr| - 2 |. Throws std::domain_error if the
// map does not preserve the disk.
MapClass classify(const DiskAutomorphism& m, double eps_cls = 1e-9);

// Roots of c z^2 + (d - a) z - b = 0 on the sphere. Throws on +/- identity.
FixedPoints fixed_points(const MoebiusMap& m);

// Boundary fixed points of a hyperbolic automorphism, attracting first.
std::pair<cplx, cplx> hyperbolic_fixed_points(const DiskAutomorphism& m);

}  // namespace bl
