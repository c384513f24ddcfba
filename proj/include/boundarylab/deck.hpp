#pragma once

#include <memory>
#include <optional>

#include "boundarylab/hyperbolic.hpp"

namespace bl {

struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AmbiguousAtTolerance : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Group letter: generator index with exponent +/-1.
struct Letter {
    int gen = 0;
    int exp = +1;
    friend bool operator==(const Letter& a, const Letter& b) {
        return a.gen == b.gen && a.exp == b.exp;
    }
};

inline Letter inverse(Letter l) { return {l.gen, -l.exp}; }
inline bool cancels(Letter a, Letter b) { return a.gen == b.gen && a.exp == -b.exp; }

// Reduced word over the generators.
struct GroupWord {
    std::vector<Letter> letters;
    bool reduced() const {
        for (size_t i = 0; i + 1 < letters.size(); ++i)
            if (cancels(letters[i], letters[i + 1])) return false;
        return true;
    }
};

struct GeneratorSpec {
    DiskAutomorphism map;
    int level = 1;
    MapClass kind = MapClass::Hyperbolic;  // Hyperbolic or Parabolic only
    Arc source_arc;                        // contains the repelling side
    Arc target_arc;                        // contains the attracting side
    int parent_node = -1;                  // branch-tree node owning this generator
};

// Paired boundary arcs from the isometric circles of the det-1 matrix.
// The map sends the complement of the source arc exactly onto the target arc.
std::pair<Arc, Arc> ford_arcs(const DiskAutomorphism& m);

// Node of the boundary-component tree declared by the system builders.
// Root nodes correspond to the boundary classes of the level-1 system.
struct BranchNode {
    int parent = -1;
    int via_generator = -1;  // generator entered when descending into this node
    int level = 1;
    bool terminal = true;    // no deeper generators will ever appear inside
    Arc territory = Arc::full_circle();
    std::vector<int> children;
};

class SchottkySystem;

// Extends a lazily generated system one level at a time.
class CascadeRule {
  public:
    virtual ~CascadeRule() = default;
    virtual void extend(SchottkySystem& sys, int level) const = 0;
    // True when deeper generators may still appear inside this gap.
    virtual bool gap_live(const SchottkySystem& sys, const Arc& gap) const = 0;
};

class SchottkySystem {
  public:
    cplx basepoint{0.0, 0.0};
    std::vector<GeneratorSpec> gens;
    std::vector<BranchNode> nodes;
    std::shared_ptr<const CascadeRule> cascade;  // null for finite rank
    std::string name;

    bool finite_rank() const { return cascade == nullptr; }
    int materialized_level() const { return materialized_; }
    void materialize(int level);

    int rank() const { return static_cast<int>(gens.size()); }
    int letter_count() const { return 2 * rank(); }

    // Letters ordered by (generator index, then exponent +1 before -1).
    Letter letter(int k) const { return {k / 2, k % 2 == 0 ? +1 : -1}; }
    const Arc& arc_of(Letter l) const {
        return l.exp > 0 ? gens[l.gen].target_arc : gens[l.gen].source_arc;
    }
    DiskAutomorphism map_of(Letter l) const {
        return l.exp > 0 ? gens[l.gen].map : gens[l.gen].map.inverse();
    }
    DiskAutomorphism word_map(const GroupWord& w) const;

    int level_of(Letter l) const { return gens[l.gen].level; }

  private:
    int materialized_ = 1;
};

struct ValidationIssue {
    enum class Kind { BadGeneratorClass, OverlappingArcs, PingPongFailure };
    Kind kind;
    int i = -1, j = -1;
    cplx witness{0.0, 0.0};
    std::string message;
};

struct ValidationResult {
    bool ok = true;
    std::vector<ValidationIssue> issues;
    int level_horizon = 1;
    explicit operator bool() const { return ok; }
};

ValidationResult validate(const SchottkySystem& sys, int level_horizon);

// Orbit of the basepoint under all reduced words of length <= L, in BFS
// order (word length, then letters ordered by index/exponent).
std::vector<cplx> orbit(const SchottkySystem& sys, int L,
                        std::size_t word_cap = 1000000);
std::vector<cplx> orbit_serial(const SchottkySystem& sys, int L,
                               std::size_t word_cap = 1000000);

struct LimitSetCover {
    int depth = 0;
    std::vector<Arc> arcs;  // sorted by lo angle
    double total_length = 0.0;
    bool contains(double theta, double tol = 0.0) const;
};

LimitSetCover limit_set_cover(const SchottkySystem& sys, int L,
                              std::size_t word_cap = 1000000);
LimitSetCover limit_set_cover_serial(const SchottkySystem& sys, int L,
                                     std::size_t word_cap = 1000000);

// Open arcs of the boundary circle not covered by generator arcs. Degenerate
// gaps are synthesized at parabolic tangency points.
struct Gap {
    Arc arc;
    bool degenerate = false;
    int parabolic_gen = -1;
};

std::vector<Gap> depth0_gaps(const SchottkySystem& sys, double eps = 1e-9);

struct CodingStream {
    std::vector<Letter> itinerary;       // reduced
    std::optional<int> terminal_gap;     // set iff the coding terminated
    // Detected exact recurrence of the pulled-back point: the itinerary is
    // eventually periodic with this period starting at cycle_start.
    std::optional<int> cycle_start;
    int cycle_period = 0;
    int horizon = 0;
    bool finite() const { return terminal_gap.has_value(); }
};

CodingStream code_boundary_point(const SchottkySystem& sys, double theta,
                                 int max_letters, double eps_arc = 1e-10);

// One-sided estimate: does some orbit point of word length <= L lie in the
// hyperbolic Stolz angle of aperture r around the radius at theta?
bool nt_hit_estimate(const SchottkySystem& sys, double theta, int L, double r,
                     std::size_t word_cap = 1000000);

// Copy of the system with levels remapped (monotone increasing schedule).
SchottkySystem relevel(const SchottkySystem& sys,
                       const std::function<int(int)>& schedule);

}  // namespace bl
