#pragma once

#include "boundarylab/deck.hpp"

namespace bl {

// Path through the branch tree: digits[0] picks a root node (in root order),
// digits[k] picks a child of the previous node.
struct BoundaryAddress {
    std::vector<int> digits;
    friend bool operator==(const BoundaryAddress& a, const BoundaryAddress& b) {
        return a.digits == b.digits;
    }
};

enum class DepthClassTag { Finite, Infinite, Oscillating, UndecidedAtHorizon };
enum class RadialTypeTag { Escaping, Bounded, Bungee, Undecided };

const char* to_string(DepthClassTag t);
const char* to_string(RadialTypeTag t);

// Levels of the fundamental crosscuts crossed by the radius, read off the
// itinerary. Consecutive repeats of a parabolic letter escalate: the radius
// crosses one exhaustion curve around the puncture per level.
struct DepthSequence {
    std::vector<int> entries;
    bool terminated = false;
    std::optional<int> terminal_gap;
    std::optional<int> cycle_start;
    int cycle_period = 0;
    bool parabolic_tail = false;  // itinerary tail is a single parabolic letter
    int horizon = 0;
};

struct SymbolicDepths {
    std::vector<int> preamble;
    enum class Tail { Terminated, Periodic, Increasing, OscillatingInterleave };
    Tail tail = Tail::Terminated;
    std::vector<int> period;  // Periodic tail data

    static SymbolicDepths terminated(std::vector<int> pre);
    static SymbolicDepths periodic(std::vector<int> pre, std::vector<int> period);
    static SymbolicDepths increasing(std::vector<int> pre);
    static SymbolicDepths interleaved(std::vector<int> bounded_part);
};

struct DepthDiagnostics {
    int tail_min = 0;
    int tail_max = 0;
    int window = 0;
};

DepthSequence depths_from_coding(const SchottkySystem& sys, const CodingStream& cs);
DepthSequence depth_sequence(const SchottkySystem& sys, double theta, int M);

DepthClassTag classify_depth(const DepthSequence& raw, DepthDiagnostics* diag = nullptr);
DepthClassTag classify_depth(const SymbolicDepths& symbolic);

struct RadialTypeResult {
    RadialTypeTag tag = RadialTypeTag::Undecided;
    DepthClassTag depth_class = DepthClassTag::UndecidedAtHorizon;
    CodingStream coding;
    DepthSequence depths;
    bool parabolic_tail = false;
};

RadialTypeResult radial_type(const SchottkySystem& sys, double theta, int M);
RadialTypeTag radial_tag_for(DepthClassTag depth_class);

struct AlphaImage {
    enum class Carrier { Point, ClosedArc, OpenArc };
    Carrier carrier = Carrier::ClosedArc;
    Arc arc;  // degenerate for Point
    BoundaryAddress address;
    std::vector<double> stage_lengths;  // nested stage arc lengths
};

// Nested intersection of lifted component closures along an address branch.
// lift_choices optionally inserts a reduced word before each descent step
// (selecting a different preimage component); non-nested choices throw.
AlphaImage alpha_image(SchottkySystem& sys, const BoundaryAddress& addr,
                       const std::vector<GroupWord>& lift_choices, int horizon);

struct AssociatedAddresses {
    std::vector<BoundaryAddress> matches;         // deepest matched branch prefixes
    std::vector<BoundaryAddress> root_prefixes;   // root classes touched
};

AssociatedAddresses associated_addresses(SchottkySystem& sys, double theta, int M);
AssociatedAddresses associated_addresses_for(SchottkySystem& sys, const CodingStream& cs);

struct BungeePoint {
    Arc interval;                   // nested output interval at the horizon
    std::vector<Letter> itinerary;  // constructed reduced itinerary
    SymbolicDepths symbolic;
    std::vector<BoundaryAddress> addresses;
};

// Realizes the branch-crossing construction: descends the given addresses in
// round-robin order, inserting minimal-level connector letters between
// branch switches. `variant` selects among valid connector choices and
// yields pairwise disjoint output intervals.
BungeePoint construct_bungee_point(SchottkySystem& sys,
                                   const std::vector<BoundaryAddress>& addrs,
                                   int horizon, int variant = 0);

// Letters along an address branch (the +1 letter of each via-generator).
std::vector<Letter> branch_letters(SchottkySystem& sys, const BoundaryAddress& addr,
                                   int max_letters);

}  // namespace bl
