#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "boundarylab/covering.hpp"

using namespace bl;

namespace {

// Closed-form hyperbolic density of the symmetric annulus {1/R < |z| < R},
// normalized to curvature -1. The core circle has length pi^2 / log R.
double annulus_density(double R, cplx z) {
    const double lr = std::log(R);
    const double u = kPi * std::log(std::abs(z)) / (2.0 * lr);
    return (kPi / (2.0 * lr)) / (std::abs(z) * std::cos(u));
}

}  // namespace

TEST_CASE("annulus covering basics") {
    const ExplicitCovering cov = build_annulus_covering(2.0);
    CHECK(std::abs(cov.evaluate(cplx(0, 0)) - cplx(1, 0)) < 1e-12);
    CHECK(classify(cov.deck_generator) == MapClass::Hyperbolic);
    const auto [att, rep] = hyperbolic_fixed_points(cov.deck_generator);
    CHECK(std::abs(std::abs(att.real()) - 1.0) < 1e-9);
    CHECK(std::abs(std::abs(rep.real()) - 1.0) < 1e-9);
    CHECK(std::abs(att + rep) < 1e-9);  // the pair {+1, -1}

    CHECK_THROWS_AS(build_annulus_covering(1.0), std::invalid_argument);
}

TEST_CASE("annulus deck relation on a grid") {
    const ExplicitCovering cov = build_annulus_covering(2.0);
    double worst = 0.0;
    for (int i = 0; i < 32; ++i) {
        for (int j = 1; j <= 12; ++j) {
            const cplx z = std::polar(j / 13.0, kTwoPi * i / 32);
            const cplx a = cov.evaluate(cov.deck_generator.apply(z));
            const cplx b = cov.evaluate(z);
            worst = std::max(worst, std::abs(a - b));
        }
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("annulus radial traces reach the right boundary") {
    const ExplicitCovering cov = build_annulus_covering(2.0);
    // Radii away from the fixed directions escape to one boundary circle.
    const RadialTrace tr = radial_trace(cov, kPi / 2, 48, 1.0 - 1e-10);
    REQUIRE(tr.t.size() > 10);
    for (size_t i = 0; i + 1 < tr.t.size(); ++i) CHECK(tr.t[i] < tr.t[i + 1]);
    const double final_mod = std::abs(tr.values.back());
    CHECK((std::abs(final_mod - 2.0) < 1e-3 || std::abs(final_mod - 0.5) < 1e-3));

    // The fixed direction theta = 0 stays on the core circle.
    const RadialTrace core = radial_trace(cov, 0.0, 48, 1.0 - 1e-10);
    for (const cplx& v : core.values) CHECK(std::abs(std::abs(v) - 1.0) < 1e-9);
}

TEST_CASE("punctured disk covering basics") {
    const ExplicitCovering cov = build_punctured_disk_covering();
    const cplx v0 = cov.evaluate(cplx(0, 0));
    CHECK(std::abs(v0) < 1.0);
    CHECK(std::abs(v0) > 0.0);
    CHECK(std::abs(v0 - std::exp(cplx(-1, 0))) < 1e-12);

    CHECK(classify(cov.deck_generator) == MapClass::Parabolic);
    const FixedPoints fp = fixed_points(cov.deck_generator.map);
    CHECK(fp.double_point);
    CHECK(std::abs(fp.points[0].value() - cplx(-1, 0)) < 1e-9);

    // Radial trace toward the parabolic point lands at the puncture.
    const RadialTrace tr = radial_trace(cov, kPi, 48, 1.0 - 1e-10);
    CHECK(std::abs(tr.values.back()) < 1e-3);
}

TEST_CASE("covering maps hit a sampled grid of the domain") {
    const ExplicitCovering cov = build_annulus_covering(2.0);
    for (int i = 0; i < 16; ++i) {
        for (int j = 1; j <= 8; ++j) {
            const double r = 0.5 + 1.5 * j / 9.0;
            const cplx target = std::polar(r, kTwoPi * i / 16);
            // invert through the strip: w = log(target) on a nearby branch
            const cplx w(std::log(r), std::arg(target));
            const cplx z = cov.from_strip(w);
            CHECK(std::abs(z) < 1.0);
            CHECK(std::abs(cov.evaluate(z) - target) < 1e-9);
        }
    }

    const ExplicitCovering punc = build_punctured_disk_covering();
    for (int i = 0; i < 16; ++i) {
        for (int j = 1; j <= 8; ++j) {
            const double r = 0.08 * j;
            const cplx target = std::polar(r, kTwoPi * i / 16);
            const cplx w(std::log(r), std::arg(target));
            const cplx z = punc.from_strip(w);
            CHECK(std::abs(z) < 1.0);
            CHECK(std::abs(punc.evaluate(z) - target) < 1e-9);
        }
    }
}

TEST_CASE("shallow horizons stay undetermined for slow escapers") {
    const ExplicitCovering cov = build_annulus_covering(2.0);
    RadialHorizon shallow;
    shallow.n_samples = 24;
    shallow.t_max = 0.9;
    // fixed directions remain bounded even at shallow horizons
    CHECK(classify_radial(cov, 0.0, shallow) == RadialVerdict::Bounded);
    // a slow escaper that has visibly started moving but not arrived is
    // neither escaping nor bounded at this horizon
    CHECK(classify_radial(cov, 0.05, shallow) == RadialVerdict::Undetermined);
}

TEST_CASE("classify_radial verdicts") {
    const ExplicitCovering cov = build_annulus_covering(2.0);
    CHECK(classify_radial(cov, kPi / 3) == RadialVerdict::Escaping);
    CHECK(classify_radial(cov, 0.0) == RadialVerdict::Bounded);
    CHECK(classify_radial(cov, kPi) == RadialVerdict::Bounded);

    const ExplicitCovering punc = build_punctured_disk_covering();
    CHECK(classify_radial(punc, kPi) == RadialVerdict::Escaping);
}

TEST_CASE("classify_radial batch matches serial") {
    const ExplicitCovering cov = build_annulus_covering(2.0);
    std::vector<double> thetas;
    for (int i = 0; i < 64; ++i) thetas.push_back(0.05 + kTwoPi * i / 64.0);
    const auto a = classify_radial_batch(cov, thetas);
    const auto b = classify_radial_batch_serial(cov, thetas);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("almost every sampled direction escapes") {
    const ExplicitCovering cov = build_annulus_covering(2.0);
    std::mt19937_64 rng(211);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    int escaping = 0, total = 0;
    for (int i = 0; i < 1000; ++i) {
        const double theta = u(rng);
        if (std::abs(std::remainder(theta, kPi)) < 1e-3) continue;
        ++total;
        if (classify_radial(cov, theta) == RadialVerdict::Escaping) ++escaping;
    }
    CHECK(escaping == total);
}

TEST_CASE("constant curves lift to constant paths") {
    const ExplicitCovering cov = build_annulus_covering(2.0);
    const std::vector<cplx> curve(10, cplx(1, 0));
    const auto lift = lift_curve(cov, curve, cplx(0, 0));
    REQUIRE(lift.size() == curve.size());
    for (const cplx& z : lift) CHECK(std::abs(z) < 1e-12);
}

TEST_CASE("lifting the core circle once ends at the deck image") {
    const ExplicitCovering cov = build_annulus_covering(2.0);
    std::vector<cplx> loop;
    for (int i = 0; i <= 256; ++i) loop.push_back(std::polar(1.0, kTwoPi * i / 256.0));
    const auto lift = lift_curve(cov, loop, cplx(0, 0));
    const cplx expected = cov.deck_generator.apply(cplx(0, 0));
    CHECK(std::abs(lift.back() - expected) < 1e-6);
}

TEST_CASE("lifting a radial segment approaches the boundary") {
    const ExplicitCovering cov = build_annulus_covering(2.0);
    std::vector<cplx> seg;
    for (int i = 0; i <= 400; ++i) seg.push_back(cplx(1.0 + (1.0 - 1e-6) * i / 400.0, 0));
    const auto lift = lift_curve(cov, seg, cplx(0, 0));
    CHECK(std::abs(lift.back()) > 0.99);
    CHECK(std::abs(cov.evaluate(lift.back()) - seg.back()) < 1e-7);
}

TEST_CASE("pi composed with the lift reproduces the curve") {
    const ExplicitCovering cov = build_annulus_covering(2.0);
    std::vector<cplx> curve;
    for (int i = 0; i <= 300; ++i) {
        const double t = static_cast<double>(i) / 300.0;
        curve.push_back(std::polar(1.0 + 0.6 * std::sin(3.0 * t), 5.0 * t));
    }
    const auto lift = lift_curve(cov, curve, cplx(0, 0));
    for (size_t i = 0; i < curve.size(); ++i)
        CHECK(std::abs(cov.evaluate(lift[i]) - curve[i]) < 1e-7);
    // continuity of the lift
    for (size_t i = 0; i + 1 < lift.size(); ++i)
        CHECK(std::abs(lift[i + 1] - lift[i]) < 0.1);
}

TEST_CASE("lift_curve rejects mismatched starts") {
    const ExplicitCovering cov = build_annulus_covering(2.0);
    const std::vector<cplx> curve(4, cplx(1.5, 0));
    CHECK_THROWS_AS(lift_curve(cov, curve, cplx(0, 0)), std::invalid_argument);
}

TEST_CASE("local isometry against the closed-form density") {
    const ExplicitCovering cov = build_annulus_covering(2.0);
    // Short segment in the annulus, lifted; compare hyperbolic lengths.
    std::vector<cplx> curve;
    const int n = 2000;
    for (int i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        curve.push_back(std::polar(1.1 + 0.05 * t, 0.3 + 0.2 * t));
    }
    const auto lift = lift_curve(cov, curve, cov.from_strip(std::log(curve.front())));

    double len_disk = 0.0;
    for (size_t i = 0; i + 1 < lift.size(); ++i) len_disk += hyp_distance(lift[i], lift[i + 1]);
    double len_annulus = 0.0;
    for (size_t i = 0; i + 1 < curve.size(); ++i) {
        const cplx mid = 0.5 * (curve[i] + curve[i + 1]);
        len_annulus += annulus_density(2.0, mid) * std::abs(curve[i + 1] - curve[i]);
    }
    CHECK(std::abs(len_disk - len_annulus) < 1e-5);
}

TEST_CASE("lehto-virtanen consistency at the puncture") {
    const ExplicitCovering cov = build_punctured_disk_covering();
    // A non-radial curve landing at -1 whose image lands at the puncture.
    std::vector<cplx> lifted_curve;
    for (int i = 0; i <= 200; ++i) {
        const double t = static_cast<double>(i) / 200.0;
        const double r = 0.999 * t;
        lifted_curve.push_back(std::polar(r, kPi + 0.3 * (1.0 - t) * std::sin(6 * t)));
    }
    std::vector<double> mods;
    for (const cplx& z : lifted_curve) mods.push_back(std::abs(cov.evaluate(z)));
    // both the curve image and the radial trace end near 0
    const RadialTrace tr = radial_trace(cov, kPi, 48, 1.0 - 1e-9);
    CHECK(mods.back() < 1e-4);
    CHECK(std::abs(tr.values.back()) < 1e-4);
}

TEST_CASE("correspondence of loops and deck powers") {
    const ExplicitCovering cov = build_annulus_covering(2.0);
    for (int k : {0, 1, 2, 3}) {
        const CorrespondenceReport rep = correspondence_check(cov, 0.8, k);
        CHECK(rep.discrepancy < 1e-5);
    }
}
