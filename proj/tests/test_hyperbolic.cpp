#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "boundarylab/hyperbolic.hpp"

using namespace bl;

namespace {

// Independent oracle: integrate the density 2/(1-t^2) along [0, m] with
// adaptive Simpson. hyp_distance(z, w) reduces to this after moving z to 0.
double simpson(double a, double b) {
    auto f = [](double t) { return 2.0 / (1.0 - t * t); };
    const double c = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
}

double adaptive(double a, double b, double whole, double tol, int depth) {
    const double c = 0.5 * (a + b);
    const double left = simpson(a, c), right = simpson(c, b);
    if (depth > 40 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive(a, c, left, tol / 2.0, depth + 1) +
           adaptive(c, b, right, tol / 2.0, depth + 1);
}

double radial_distance_oracle(double m) {
    if (m == 0.0) return 0.0;
    return adaptive(0.0, m, simpson(0.0, m), 1e-13, 0);
}

double distance_oracle(cplx z, cplx w) {
    const double m = std::abs((w - z) / (1.0 - std::conj(z) * w));
    return radial_distance_oracle(m);
}

DiskAutomorphism random_automorphism(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::uniform_real_distribution<double> radius(0.0, 0.9);
    return from_disk_params(angle(rng), std::polar(radius(rng), angle(rng)));
}

cplx random_point(std::mt19937_64& rng, double rmax = 0.93) {
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::uniform_real_distribution<double> radius(0.0, rmax);
    return std::polar(radius(rng), angle(rng));
}

}  // namespace

TEST_CASE("hyp_distance basics") {
    CHECK(hyp_distance(cplx(0, 0), cplx(0, 0)) == 0.0);
    CHECK(std::abs(hyp_distance(cplx(0, 0), cplx(0.5, 0)) - 2.0 * std::atanh(0.5)) < 1e-12);
    CHECK(std::abs(hyp_distance(cplx(0, 0), cplx(0.5, 0)) - 1.0986122886681098) < 1e-7);

    // rotation invariance
    const double d1 = hyp_distance(cplx(0.3, 0), cplx(0, 0.3));
    const cplx r = std::polar(1.0, 1.1);
    const double d2 = hyp_distance(r * cplx(0.3, 0), r * cplx(0, 0.3));
    CHECK(std::abs(d1 - d2) < 1e-12);

    CHECK_THROWS_AS(hyp_distance(cplx(1.0, 0), cplx(0, 0)), std::domain_error);
}

TEST_CASE("hyp_distance matches the integration oracle") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 1000; ++i) {
        const cplx z = random_point(rng), w = random_point(rng);
        CHECK(std::abs(hyp_distance(z, w) - distance_oracle(z, w)) < 1e-9);
    }
}

TEST_CASE("isometry invariance") {
    std::mt19937_64 rng(103);
    for (int i = 0; i < 1000; ++i) {
        const DiskAutomorphism g = random_automorphism(rng);
        const cplx z = random_point(rng), w = random_point(rng);
        CHECK(std::abs(hyp_distance(g.apply(z), g.apply(w)) - hyp_distance(z, w)) < 1e-9);
    }
}

TEST_CASE("triangle additivity along geodesics") {
    std::mt19937_64 rng(107);
    for (int i = 0; i < 200; ++i) {
        const cplx z = random_point(rng, 0.85), w = random_point(rng, 0.85);
        if (std::abs(z - w) < 1e-3) continue;
        // midpoint via the normalized model: move z to 0, take half the radius
        const cplx wz = (w - z) / (1.0 - std::conj(z) * w);
        const double half = std::tanh(0.25 * 2.0 * std::atanh(std::abs(wz)));
        const cplx mid_model = half * wz / std::abs(wz);
        const cplx mid = (mid_model + z) / (1.0 + std::conj(z) * mid_model);
        CHECK(std::abs(hyp_distance(z, mid) + hyp_distance(mid, w) - hyp_distance(z, w)) <
              1e-8);
    }
}

TEST_CASE("geodesic_through named cases") {
    const Geodesic d1 = geodesic_through(cplx(0, 0), cplx(0.5, 0));
    CHECK(d1.is_diameter());

    const Geodesic d2 = geodesic_through(cplx(0, 0.5), cplx(0, -0.5));
    CHECK(d2.is_diameter());

    const Geodesic oc = geodesic_through(cplx(0.5, 0), cplx(0, 0.5));
    REQUIRE_FALSE(oc.is_diameter());
    const auto& rep = std::get<Geodesic::Orthocircle>(oc.rep);
    CHECK(std::abs(std::norm(rep.center) - 1.0 - rep.radius * rep.radius) < 1e-9);
    CHECK(oc.curve_offset(cplx(0.5, 0)) < 1e-9);
    CHECK(oc.curve_offset(cplx(0, 0.5)) < 1e-9);

    CHECK_THROWS_AS(geodesic_through(cplx(0.1, 0.1), cplx(0.1, 0.1)),
                    std::invalid_argument);
}

TEST_CASE("geodesic uniqueness and orthogonality") {
    std::mt19937_64 rng(109);
    for (int i = 0; i < 400; ++i) {
        const cplx z = random_point(rng), w = random_point(rng);
        if (std::abs(z - w) < 1e-3) continue;
        const Geodesic g1 = geodesic_through(z, w);
        const Geodesic g2 = geodesic_through(w, z);
        CHECK(g1.curve_offset(z) < 1e-9);
        CHECK(g1.curve_offset(w) < 1e-9);
        // same point set: endpoints agree up to swap
        const bool same =
            (std::abs(g1.e1.theta - g2.e1.theta) < 1e-7 &&
             std::abs(g1.e2.theta - g2.e2.theta) < 1e-7) ||
            (std::abs(g1.e1.theta - g2.e2.theta) < 1e-7 &&
             std::abs(g1.e2.theta - g2.e1.theta) < 1e-7);
        CHECK(same);
        if (!g1.is_diameter()) {
            const auto& rep = std::get<Geodesic::Orthocircle>(g1.rep);
            if (std::abs(rep.center) < 2e3)
                CHECK(std::abs(std::norm(rep.center) - 1.0 - rep.radius * rep.radius) < 1e-9);
        }
    }
}

TEST_CASE("automorphisms map geodesics to geodesics") {
    std::mt19937_64 rng(113);
    for (int i = 0; i < 200; ++i) {
        const DiskAutomorphism g = random_automorphism(rng);
        const cplx z = random_point(rng), w = random_point(rng);
        if (std::abs(z - w) < 1e-3) continue;
        const Geodesic before = geodesic_through(z, w);
        const Geodesic after = geodesic_through(g.apply(z), g.apply(w));
        // sample points between z and w on the geodesic, map, check incidence
        for (double t : {0.2, 0.5, 0.8}) {
            const cplx wz = (w - z) / (1.0 - std::conj(z) * w);
            const double s = std::tanh(t * std::atanh(std::abs(wz)));
            const cplx pm = s * wz / std::abs(wz);
            const cplx p = (pm + z) / (1.0 + std::conj(z) * pm);
            CHECK(before.curve_offset(p) < 1e-8);
            CHECK(after.curve_offset(g.apply(p)) < 1e-8);
        }
    }
}

TEST_CASE("hyperbolic disks are euclidean disks") {
    const auto [c0, r0] = hyperbolic_disk_euclidean({DiskPoint(cplx(0, 0)), 1.0});
    CHECK(std::abs(c0) < 1e-15);
    CHECK(std::abs(r0 - std::tanh(0.5)) < 1e-12);

    const auto [c1, r1] = hyperbolic_disk_euclidean({DiskPoint(cplx(0, 0)), 0.0});
    CHECK(r1 == 0.0);
    CHECK(std::abs(c1) < 1e-15);

    // off-center: membership agreement on a grid
    const HyperbolicDisk hd{DiskPoint(cplx(0.5, 0)), 1.0};
    const auto [c, r] = hyperbolic_disk_euclidean(hd);
    std::mt19937_64 rng(127);
    int agreements = 0;
    for (int i = 0; i < 1000; ++i) {
        const cplx z = random_point(rng, 0.97);
        const bool in_euclid = std::abs(z - c) < r;
        const double d = hyp_distance(hd.center.z, z);
        if (std::abs(d - hd.radius) < 1e-6) continue;  // boundary-grazing
        const bool in_hyp = d < hd.radius;
        CHECK(in_euclid == in_hyp);
        ++agreements;
    }
    CHECK(agreements > 900);
}

TEST_CASE("horodisk euclidean data") {
    const auto [c, r] = horodisk_euclidean({BoundaryPoint(0.0), 1.0});
    CHECK(std::abs(c - cplx(0.5, 0)) < 1e-15);
    CHECK(std::abs(r - 0.5) < 1e-15);

    const auto [c2, r2] = horodisk_euclidean({BoundaryPoint(kPi), 1.0});
    CHECK(std::abs(c2 - cplx(-0.5, 0)) < 1e-15);
    CHECK(std::abs(r2 - 0.5) < 1e-15);

    const auto [c3, r3] = horodisk_euclidean({BoundaryPoint(0.0), 1e-9});
    CHECK(r3 < 1e-8);
    CHECK(std::abs(std::abs(c3) + r3 - 1.0) < 1e-12);  // internally tangent

    CHECK_THROWS_AS(horodisk_euclidean({BoundaryPoint(0.0), 0.0}), std::invalid_argument);
}

TEST_CASE("horodisk invariance under its parabolic") {
    const cplx p = std::polar(1.0, 2.0);
    const DiskAutomorphism par = parabolic_at(p, 2.0);
    const auto [c, r] = horodisk_euclidean({BoundaryPoint(2.0), 0.8});
    for (int k = 0; k < 64; ++k) {
        const cplx z = c + std::polar(r, kTwoPi * k / 64);
        if (std::abs(z) >= 1.0) continue;
        const cplx w = par.apply(z);
        CHECK(std::abs(std::abs(w - c) - r) < 1e-9);  // boundary maps to boundary
    }
}

TEST_CASE("stolz angle membership") {
    const StolzAngle eu = StolzAngle::euclidean(BoundaryPoint(0.7), 0.6, 0.9);
    // points on the radius lie in the angle
    for (double t : {0.2, 0.6, 0.95})
        CHECK(stolz_contains(eu, t * std::polar(1.0, 0.7)));
    // boundary points never belong
    CHECK_FALSE(stolz_contains(eu, std::polar(1.0, 0.7)));

    const StolzAngle hy = StolzAngle::hyperbolic_radial(BoundaryPoint(0.7), 1.0);
    for (double t : {0.0, 0.5, 0.99})
        CHECK(stolz_contains(hy, t * std::polar(1.0, 0.7)));
    CHECK_FALSE(stolz_contains(hy, std::polar(1.0, 0.7)));
    // far-away points are excluded
    CHECK_FALSE(stolz_contains(hy, 0.9 * std::polar(1.0, 0.7 + kPi)));
}

TEST_CASE("euclidean and hyperbolic stolz angles sandwich") {
    // Fit constants: A_{alpha1, r/K} within Delta within A_{alpha2, K r}.
    const double theta = 1.3;
    const double r = 0.8;
    const StolzAngle hy = StolzAngle::hyperbolic_radial(BoundaryPoint(theta), r);

    double alpha1 = 0.0;
    const double K = 4.0;
    for (double a = 0.05; a < kPi / 2; a += 0.05) {
        const StolzAngle eu = StolzAngle::euclidean(BoundaryPoint(theta), a, r / K);
        bool inside = true;
        for (int i = 0; i < 4000 && inside; ++i) {
            const double rho = 1e-4 + (r / K - 2e-4) * (i % 200) / 200.0;
            const double phi = -a + 2.0 * a * (i / 200) / 20.0;
            const cplx e = std::polar(1.0, theta);
            const cplx z = e - std::polar(rho, theta + phi);
            if (std::abs(z) >= 1.0) continue;
            if (stolz_contains(eu, z) && !stolz_contains(hy, z)) inside = false;
        }
        if (inside)
            alpha1 = a;
        else
            break;
    }
    CHECK(alpha1 > 0.0);  // some euclidean angle fits inside

    // The hyperbolic angle fits inside a wide euclidean angle of radius K r.
    const StolzAngle eu2 =
        StolzAngle::euclidean(BoundaryPoint(theta), kPi / 2 - 0.01, std::min(1.9, K * r));
    std::mt19937_64 rng(131);
    for (int i = 0; i < 4000; ++i) {
        std::uniform_real_distribution<double> ur(0.0, 0.999999);
        std::uniform_real_distribution<double> ua(0.0, kTwoPi);
        const cplx z = std::polar(ur(rng), ua(rng));
        if (stolz_contains(hy, z) && std::abs(z - std::polar(1.0, theta)) < 1.8)
            CHECK(stolz_contains(eu2, z));
    }
}

TEST_CASE("null chain prefixes") {
    // Concentric geodesic crosscuts shrinking toward theta = 0.
    NullChain good;
    good.at = [](int n) {
        const double w = 0.8 * std::pow(0.5, n);
        return Crosscut::geodesic(-w, w);
    };
    CHECK(is_null_chain_prefix(good, 6));

    // Two crossing arcs fail.
    NullChain crossing;
    crossing.at = [](int n) {
        if (n == 0) return Crosscut::geodesic(-0.5, 0.5);
        return Crosscut::geodesic(0.2, 1.0);  // interleaves with the first
    };
    CHECK_FALSE(is_null_chain_prefix(crossing, 2));

    // Nested arcs sharing an endpoint fail.
    NullChain shared;
    shared.at = [](int n) {
        if (n == 0) return Crosscut::geodesic(-0.8, 0.5);
        return Crosscut::geodesic(-0.8 + 0.0, 0.2);  // same left endpoint
    };
    CHECK_FALSE(is_null_chain_prefix(shared, 2));

    // Growing neighbourhoods fail the diameter test.
    NullChain growing;
    growing.at = [](int n) {
        const double w = 0.1 * (n + 1);
        return Crosscut::geodesic(-w, w);
    };
    CHECK_FALSE(is_null_chain_prefix(growing, 3));
}

TEST_CASE("dist_to_ray agrees with brute force") {
    std::mt19937_64 rng(137);
    for (int i = 0; i < 60; ++i) {
        const double theta = std::uniform_real_distribution<double>(0.0, kTwoPi)(rng);
        const cplx z = random_point(rng, 0.9);
        // brute force over the ray [0, e^{i theta})
        double best = 1e99;
        for (int k = 0; k < 20000; ++k) {
            const double t = static_cast<double>(k) / 20000.0;
            best = std::min(best, hyp_distance(z, t * std::polar(1.0, theta)));
        }
        const double d = dist_to_ray(z, cplx(0, 0), theta);
        CHECK(std::abs(d - best) < 2e-3);
    }
}
