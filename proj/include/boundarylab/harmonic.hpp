#pragma once

#include <cstdint>

#include "boundarylab/moebius.hpp"

namespace bl {

struct HarmonicEstimate {
    double value = 0.0;
    enum class Method { ClosedForm, MonteCarlo };
    Method method = Method::ClosedForm;
    long n_walks = 0;
    double stderr_ = 0.0;
};

// Harmonic measure of the inner circle {|z| = 1/R} of A = {1/R < |z| < R},
// u(z) = (log R - log |z|) / (2 log R).
HarmonicEstimate harmonic_measure_annulus_closed_form(double R, cplx z);

// Walk-on-spheres estimate of the same quantity. Per-walk generators are
// seeded from the master seed, so the result is independent of threading.
HarmonicEstimate harmonic_measure_annulus_mc(double R, cplx z, long n_walks,
                                             std::uint64_t seed,
                                             double absorb_tol = 1e-6);
HarmonicEstimate harmonic_measure_annulus_mc_serial(double R, cplx z, long n_walks,
                                                    std::uint64_t seed,
                                                    double absorb_tol = 1e-6);

}  // namespace bl
