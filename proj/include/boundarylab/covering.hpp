#pragma once

#include "boundarylab/hyperbolic.hpp"

namespace bl {

struct StepTooLarge : std::runtime_error {
    int index;
    explicit StepTooLarge(int i)
        : std::runtime_error("lift_curve: ambiguous continuation at sample " +
                             std::to_string(i)),
          index(i) {}
};

struct AnnulusDomain {
    double R;  // domain {1/R < |z| < R}
    explicit AnnulusDomain(double R_) : R(R_) {
        if (R_ <= 1.0) throw std::invalid_argument("AnnulusDomain: R must exceed 1");
    }
};

// Universal covering pi = exp . M of a round doubly connected model.
//   Annulus:        M maps the disk onto the vertical strip |Re w| < log R,
//                   M(0) = 0, the strip ends correspond to +/-1.
//   Punctured disk: M(z) = (z - 1)/(z + 1) maps the disk onto {Re w < 0}.
class ExplicitCovering {
  public:
    enum class Kind { Annulus, PuncturedDisk };

    Kind kind;
    double R = 0.0;  // annulus parameter
    DiskAutomorphism deck_generator;

    cplx evaluate(cplx z) const;    // pi(z)
    cplx strip_coord(cplx z) const; // M(z)
    cplx from_strip(cplx w) const;  // M^{-1}(w)

    bool in_domain(cplx v) const;
    // Distance from a domain point to the boundary of the domain (Euclidean,
    // with the puncture counted as a boundary point).
    double boundary_gap(cplx v) const;
};

ExplicitCovering build_annulus_covering(double R);
ExplicitCovering build_punctured_disk_covering();

struct RadialTrace {
    double theta = 0.0;
    std::vector<double> t;       // strictly increasing toward t_max
    std::vector<cplx> values;    // pi(t e^{i theta})
};

// Geometric sampling toward t_max with ratio q = 1/2.
RadialTrace radial_trace(const ExplicitCovering& cov, double theta, int n_samples,
                         double t_max);

enum class RadialVerdict { Escaping, Bounded, Undetermined };
const char* to_string(RadialVerdict v);

struct RadialHorizon {
    int n_samples = 64;
    double t_max = 1.0 - 1e-12;
    double escape_tol = 1e-3;
};

RadialVerdict classify_radial(const ExplicitCovering& cov, double theta,
                              const RadialHorizon& horizon = {});

std::vector<RadialVerdict> classify_radial_batch(const ExplicitCovering& cov,
                                                 const std::vector<double>& thetas,
                                                 const RadialHorizon& horizon = {});
std::vector<RadialVerdict> classify_radial_batch_serial(const ExplicitCovering& cov,
                                                        const std::vector<double>& thetas,
                                                        const RadialHorizon& horizon = {});

// Path lifting by branch continuation in the strip, with adaptive step
// halving (at most 20 subdivisions per segment).
std::vector<cplx> lift_curve(const ExplicitCovering& cov, const std::vector<cplx>& curve,
                             cplx start, double tol = 1e-6);

struct CorrespondenceReport {
    int k = 0;
    cplx endpoint_base;      // lift endpoint of the plain curve
    cplx endpoint_looped;    // lift endpoint of the k-loop curve
    cplx deck_image;         // gamma^k applied to the base endpoint
    double discrepancy = 0.0;
};

// Lifts a curve to the boundary point p = (R - eps) e^{i phi} twice, the
// second time prefixed with k core-circle loops, and compares endpoints
// against the k-th deck power.
CorrespondenceReport correspondence_check(const ExplicitCovering& cov, double phi,
                                          int k, double eps = 1e-7);

}  // namespace bl
