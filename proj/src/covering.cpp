#include "boundarylab/covering.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bl {

namespace {

cplx atanh_c(cplx z) { return 0.5 * std::log((1.0 + z) / (1.0 - z)); }
cplx tanh_c(cplx z) { return std::tanh(z); }

}  // namespace

cplx ExplicitCovering::strip_coord(cplx z) const {
    if (kind == Kind::Annulus) {
        const double s = 4.0 * std::log(R) / kPi;
        return s * cplx(0, 1) * atanh_c(z);
    }
    return (z - 1.0) / (z + 1.0);
}

cplx ExplicitCovering::from_strip(cplx w) const {
    if (kind == Kind::Annulus) {
        const double s = 4.0 * std::log(R) / kPi;
        return tanh_c(w / (s * cplx(0, 1)));
    }
    return (1.0 + w) / (1.0 - w);
}

cplx ExplicitCovering::evaluate(cplx z) const { return std::exp(strip_coord(z)); }

bool ExplicitCovering::in_domain(cplx v) const {
    if (kind == Kind::Annulus) return std::abs(v) > 1.0 / R && std::abs(v) < R;
    return std::abs(v) < 1.0 && std::abs(v) > 0.0;
}

double ExplicitCovering::boundary_gap(cplx v) const {
    if (kind == Kind::Annulus) return std::min(R - std::abs(v), std::abs(v) - 1.0 / R);
    return std::min(1.0 - std::abs(v), std::abs(v));
}

ExplicitCovering build_annulus_covering(double R) {
    if (R <= 1.0) throw std::invalid_argument("build_annulus_covering: R must exceed 1");
    ExplicitCovering cov;
    cov.kind = ExplicitCovering::Kind::Annulus;
    cov.R = R;
    // Conjugate of w -> w + 2 pi i through the strip map: atanh shift by
    // pi^2 / (2 log R) along the real axis of atanh-coordinates.
    const double delta = kPi * kPi / (2.0 * std::log(R));
    cov.deck_generator = real_hyperbolic(std::tanh(delta));
    return cov;
}

ExplicitCovering build_punctured_disk_covering() {
    ExplicitCovering cov;
    cov.kind = ExplicitCovering::Kind::PuncturedDisk;
    // M = (z-1)/(z+1); deck generator is M^{-1} (w + 2 pi i) M.
    const MoebiusMap M(cplx(1, 0), cplx(-1, 0), cplx(1, 0), cplx(1, 0));
    const MoebiusMap T(cplx(1, 0), cplx(0, kTwoPi), cplx(0, 0), cplx(1, 0));
    cov.deck_generator = DiskAutomorphism(compose(M.inverse(), compose(T, M)));
    return cov;
}

RadialTrace radial_trace(const ExplicitCovering& cov, double theta, int n_samples,
                         double t_max) {
    if (!(t_max > 0.0 && t_max < 1.0))
        throw std::invalid_argument("radial_trace: need 0 < t_max < 1");
    RadialTrace tr;
    tr.theta = normalize_angle(theta);
    const double q = 0.5;
    for (int k = 0; k < n_samples; ++k) {
        const double d = (1.0 - t_max) * std::pow(q, k - (n_samples - 1));
        const double t = 1.0 - d;
        if (t < 0.0) continue;
        if (!tr.t.empty() && t <= tr.t.back()) continue;
        tr.t.push_back(t);
        tr.values.push_back(cov.evaluate(t * std::polar(1.0, tr.theta)));
    }
    return tr;
}

const char* to_string(RadialVerdict v) {
    switch (v) {
        case RadialVerdict::Escaping: return "escaping";
        case RadialVerdict::Bounded: return "bounded";
        case RadialVerdict::Undetermined: return "undetermined";
    }
    return "?";
}

RadialVerdict classify_radial(const ExplicitCovering& cov, double theta,
                              const RadialHorizon& h) {
    const RadialTrace tr = radial_trace(cov, theta, h.n_samples, h.t_max);
    std::vector<double> gap(tr.values.size());
    for (size_t i = 0; i < tr.values.size(); ++i) gap[i] = cov.boundary_gap(tr.values[i]);

    const size_t n = gap.size();
    if (n < 4) return RadialVerdict::Undetermined;
    const size_t tail = std::min<size_t>(8, n / 2);
    bool monotone = true;
    for (size_t i = n - tail; i + 1 < n; ++i)
        if (gap[i + 1] > gap[i] + 1e-12) monotone = false;
    if (monotone && gap.back() < h.escape_tol) return RadialVerdict::Escaping;

    // Bounded requires the trace to sit in a fixed compact subdomain: the
    // boundary gap must stay large *and* essentially flat over the horizon,
    // so a slow escaper under a shallow horizon stays Undetermined.
    const double ref = cov.kind == ExplicitCovering::Kind::Annulus
                           ? 1.0 - 1.0 / cov.R
                           : 0.25;
    const double lo = *std::min_element(gap.begin(), gap.end());
    const double hi = *std::max_element(gap.begin(), gap.end());
    if (lo > 0.5 * ref && hi - lo < 0.1 * ref) return RadialVerdict::Bounded;
    return RadialVerdict::Undetermined;
}

std::vector<RadialVerdict> classify_radial_batch_serial(const ExplicitCovering& cov,
                                                        const std::vector<double>& thetas,
                                                        const RadialHorizon& h) {
    std::vector<RadialVerdict> out(thetas.size());
    for (size_t i = 0; i < thetas.size(); ++i) out[i] = classify_radial(cov, thetas[i], h);
    return out;
}

std::vector<RadialVerdict> classify_radial_batch(const ExplicitCovering& cov,
                                                 const std::vector<double>& thetas,
                                                 const RadialHorizon& h) {
    std::vector<RadialVerdict> out(thetas.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(thetas.size()); ++i)
        out[i] = classify_radial(cov, thetas[i], h);
    return out;
}

namespace {

// Continue w along the branch of log nearest to w_prev; nullopt when the
// argument jump is too large to disambiguate.
std::optional<cplx> continue_log(cplx value, cplx w_prev) {
    const double target_im = std::arg(value);
    double jump = target_im - w_prev.imag();
    jump = std::remainder(jump, kTwoPi);
    if (std::abs(jump) > 0.5 * kPi) return std::nullopt;
    return cplx(std::log(std::abs(value)), w_prev.imag() + jump);
}

}  // namespace

std::vector<cplx> lift_curve(const ExplicitCovering& cov, const std::vector<cplx>& curve,
                             cplx start, double tol) {
    if (curve.empty()) return {};
    if (std::abs(cov.evaluate(start) - curve.front()) > tol)
        throw std::invalid_argument("lift_curve: start does not lie over curve(0)");
    std::vector<cplx> lift;
    lift.reserve(curve.size());
    lift.push_back(start);
    cplx w = cov.strip_coord(start);

    for (size_t i = 1; i < curve.size(); ++i) {
        // Advance over the segment, halving on ambiguous continuation.
        const std::function<void(cplx, cplx, int)> advance = [&](cplx p, cplx q, int depth) {
            if (cov.in_domain(q)) {
                if (auto next = continue_log(q, w)) {
                    w = *next;
                    return;
                }
            }
            if (depth >= 20) throw StepTooLarge(static_cast<int>(i));
            const cplx mid = 0.5 * (p + q);
            advance(p, mid, depth + 1);
            advance(mid, q, depth + 1);
        };
        advance(curve[i - 1], curve[i], 0);
        lift.push_back(cov.from_strip(w));
    }
    return lift;
}

CorrespondenceReport correspondence_check(const ExplicitCovering& cov, double phi,
                                          int k, double eps) {
    if (cov.kind != ExplicitCovering::Kind::Annulus)
        throw std::invalid_argument("correspondence_check: annulus coverings only");
    const double r_target = cov.R - eps;

    auto circle_arc = [](double from, double to, int n, std::vector<cplx>& sink) {
        for (int i = 0; i <= n; ++i)
            sink.push_back(std::polar(1.0, from + (to - from) * i / n));
    };

    std::vector<cplx> base;
    circle_arc(0.0, phi, 64, base);
    for (int i = 1; i <= 256; ++i) {
        const double r = 1.0 + (r_target - 1.0) * i / 256.0;
        base.push_back(std::polar(r, phi));
    }

    std::vector<cplx> looped;
    for (int loop = 0; loop < k; ++loop) circle_arc(0.0, kTwoPi, 128, looped);
    looped.insert(looped.end(), base.begin(), base.end());

    const std::vector<cplx> lift0 = lift_curve(cov, base, cplx(0, 0));
    const std::vector<cplx> liftk = lift_curve(cov, looped, cplx(0, 0));

    CorrespondenceReport rep;
    rep.k = k;
    rep.endpoint_base = lift0.back();
    rep.endpoint_looped = liftk.back();
    DiskAutomorphism gk;
    for (int i = 0; i < k; ++i) gk = compose(gk, cov.deck_generator);
    auto to_circle = [](cplx z) { return z / std::abs(z); };
    rep.deck_image = gk.apply(rep.endpoint_base);
    rep.discrepancy = std::abs(to_circle(rep.deck_image) - to_circle(rep.endpoint_looped));
    return rep;
}

}  // namespace bl
