#include "boundarylab/harmonic.hpp"

#include <cmath>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bl {

HarmonicEstimate harmonic_measure_annulus_closed_form(double R, cplx z) {
    if (R <= 1.0) throw std::invalid_argument("harmonic measure: R must exceed 1");
    const double r = std::abs(z);
    if (r <= 1.0 / R || r >= R)
        throw std::domain_error("harmonic measure: point outside the annulus");
    HarmonicEstimate out;
    out.method = HarmonicEstimate::Method::ClosedForm;
    const double lr = std::log(R);
    out.value = (lr - std::log(r)) / (2.0 * lr);
    return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// One walk; returns true when absorbed at the inner circle.
bool walk_hits_inner(double R, cplx z, std::uint64_t walk_seed, double absorb_tol) {
    std::mt19937_64 rng(walk_seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double ri = 1.0 / R;
    for (;;) {
        const double r = std::abs(z);
        const double d_in = r - ri;
        const double d_out = R - r;
        if (d_in < absorb_tol) return true;
        if (d_out < absorb_tol) return false;
        const double step = std::min(d_in, d_out);
        z += std::polar(step, kTwoPi * unif(rng));
    }
}

}  // namespace

HarmonicEstimate harmonic_measure_annulus_mc_serial(double R, cplx z, long n_walks,
                                                    std::uint64_t seed, double absorb_tol) {
    if (R <= 1.0) throw std::invalid_argument("harmonic measure: R must exceed 1");
    if (std::abs(z) <= 1.0 / R || std::abs(z) >= R)
        throw std::domain_error("harmonic measure: point outside the annulus");
    long hits = 0;
    for (long i = 0; i < n_walks; ++i)
        if (walk_hits_inner(R, z, splitmix64(seed ^ static_cast<std::uint64_t>(i)),
                            absorb_tol))
            ++hits;
    HarmonicEstimate out;
    out.method = HarmonicEstimate::Method::MonteCarlo;
    out.n_walks = n_walks;
    out.value = static_cast<double>(hits) / static_cast<double>(n_walks);
    out.stderr_ = std::sqrt(out.value * (1.0 - out.value) / static_cast<double>(n_walks));
    return out;
}

HarmonicEstimate harmonic_measure_annulus_mc(double R, cplx z, long n_walks,
                                             std::uint64_t seed, double absorb_tol) {
    if (R <= 1.0) throw std::invalid_argument("harmonic measure: R must exceed 1");
    if (std::abs(z) <= 1.0 / R || std::abs(z) >= R)
        throw std::domain_error("harmonic measure: point outside the annulus");
    long hits = 0;
#pragma omp parallel for reduction(+ : hits) schedule(static)
    for (long i = 0; i < n_walks; ++i)
        if (walk_hits_inner(R, z, splitmix64(seed ^ static_cast<std::uint64_t>(i)),
                            absorb_tol))
            ++hits;
    HarmonicEstimate out;
    out.method = HarmonicEstimate::Method::MonteCarlo;
    out.n_walks = n_walks;
    out.value = static_cast<double>(hits) / static_cast<double>(n_walks);
    out.stderr_ = std::sqrt(out.value * (1.0 - out.value) / static_cast<double>(n_walks));
    return out;
}

}  // namespace bl
