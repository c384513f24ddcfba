#pragma once

#include "boundarylab/exhaustion.hpp"

namespace bl {

// Boundary classes of the depth-0 gaps under the arc pairings: walking a gap
// endpoint through its arc's pairing map reaches the next gap on the same
// boundary component of the quotient surface.
struct GapClassInfo {
    std::vector<int> gap_ids;
    GroupWord peripheral;     // cycle word (empty for the trivial system)
    bool puncture = false;
    double puncture_angle = 0.0;
    Arc span;                 // arc between the peripheral fixed points containing the gap
};

struct GapClasses {
    std::vector<Gap> gaps;
    std::vector<int> class_of;  // gap id -> class id
    std::vector<GapClassInfo> classes;
};

GapClasses gap_classes(const SchottkySystem& sys);

enum class PrimeEndClass { Regular, Singular, Parabolic };
const char* to_string(PrimeEndClass c);

struct PrimeEndResult {
    PrimeEndClass cls = PrimeEndClass::Regular;
    BoundaryPoint base;
    NullChain chain;            // representative admissible null-chain
    int terminal_gap = -1;      // Regular
    int gap_class = -1;         // Regular
    double parabolic_fixed = 0.0;
    std::vector<Letter> itinerary;
};

// Requires the base point to be escaping (terminated coding or parabolic
// tail); throws std::domain_error otherwise.
PrimeEndResult classify_prime_end(SchottkySystem& sys, double theta, int horizon);

// Classification for a symbolically specified escaping point of unbounded
// depth: the point with the given strictly-deepening itinerary.
PrimeEndResult classify_singular_prime_end(SchottkySystem& sys,
                                           const std::vector<Letter>& itinerary,
                                           int horizon);

struct Impression {
    enum class Kind { ProperSubset, WholeComponent, PuncturePoint };
    Kind kind = Kind::ProperSubset;
    AlphaImage carrier;
    int gap_class = -1;
    BoundaryAddress address;
};

const char* to_string(Impression::Kind k);

Impression impression_of(SchottkySystem& sys, const PrimeEndResult& pe);
Impression impression(SchottkySystem& sys, double theta, int horizon);
// Second, independently built admissible chain (dyadic bisection crosscuts)
// for regular points; used to cross-check impressions.
Impression impression_via_bisection(SchottkySystem& sys, double theta, int horizon);

struct AdmissibleCrosscut {
    Crosscut cut;
    enum class Witness { NonContractibleImage, SimplyConnectedImage };
    Witness witness = Witness::NonContractibleImage;
    GroupWord word;   // orbit data for non-contractible witnesses
    int gap_id = -1;  // gap certificate for simply connected witnesses
};

// Fundamental crosscut of a letter: the geodesic spanning its arc.
AdmissibleCrosscut fundamental_crosscut(const SchottkySystem& sys, Letter l);

struct RectifiedNeighbourhood {
    AdmissibleCrosscut base;
    Arc base_arc;
    std::vector<Arc> excluded;  // translate arcs removed, sorted
    Arc remainder;              // component adjacent to the target point
    int translate_count = 0;
};

RectifiedNeighbourhood rectify(const SchottkySystem& sys, const AdmissibleCrosscut& C,
                               double target_theta, int L,
                               std::size_t word_cap = 1000000);

struct TrueCrosscutResult {
    enum class Verdict { CantorLimitSet, NoGapFound };
    Verdict verdict = Verdict::NoGapFound;
    int depth_used = 0;
    std::optional<Gap> certificate_gap;
    int certificate_class = -1;
    double depth0_cover_length = 0.0;
};

const char* to_string(TrueCrosscutResult::Verdict v);

TrueCrosscutResult detect_true_crosscut(SchottkySystem& sys, int depth);

struct QuotientCount {
    bool exact = true;
    int classes = 0;
    std::vector<int> representatives;            // one gap id per class
    std::vector<std::pair<int, int>> per_level;  // lazy systems: (level, classes)
    int horizon = 0;
};

QuotientCount prime_end_quotient_count(SchottkySystem& sys, int horizon);

}  // namespace bl
