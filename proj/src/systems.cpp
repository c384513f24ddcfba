#include "boundarylab/systems.hpp"

#include <algorithm>
#include <cmath>

#include "boundarylab/primeends.hpp"

namespace bl {

GeneratorSpec make_generator(const DiskAutomorphism& m, int level, int parent_node) {
    GeneratorSpec g;
    g.map = m;
    g.level = level;
    g.kind = classify(m);
    auto [src, tgt] = ford_arcs(m);
    g.source_arc = src;
    g.target_arc = tgt;
    g.parent_node = parent_node;
    return g;
}

namespace {

bool arcs_fit_gap(const GeneratorSpec& g, const Arc& gap, double margin) {
    if (gap.len <= 2.0 * margin) return false;
    const Arc inner{normalize_angle(gap.lo + margin), gap.len - 2.0 * margin};
    return inner.contains(g.source_arc, 0.0) && inner.contains(g.target_arc, 0.0);
}

bool own_arcs_separated(const GeneratorSpec& g, double margin) {
    const double d1 = ccw_gap(g.source_arc.hi(), g.target_arc.lo);
    const double d2 = ccw_gap(g.target_arc.hi(), g.source_arc.lo);
    return d1 > margin && d2 > margin;
}

// Inside a gap, the arc pair ordered counterclockwise from the gap start.
std::pair<Arc, Arc> ordered_arcs_in_gap(const GeneratorSpec& g, const Arc& gap) {
    if (ccw_gap(gap.lo, g.source_arc.lo) < ccw_gap(gap.lo, g.target_arc.lo))
        return {g.source_arc, g.target_arc};
    return {g.target_arc, g.source_arc};
}

// Root nodes and class spans derived from the gap classes of the current
// generator set. Called once the level-1 generators are in place.
void attach_root_nodes(SchottkySystem& sys, const std::vector<bool>& terminal) {
    const GapClasses gc = gap_classes(sys);
    for (size_t c = 0; c < gc.classes.size(); ++c) {
        BranchNode node;
        node.parent = -1;
        node.via_generator = -1;
        node.level = 1;
        node.terminal = c < terminal.size() ? terminal[c] : true;
        node.territory = gc.classes[c].span;
        sys.nodes.push_back(node);
    }
}

}  // namespace

GeneratorSpec generator_in_gap(const Arc& gap, double frac_rep, double frac_att,
                               int level, double initial_length) {
    const cplx rep = std::polar(1.0, gap.lo + frac_rep * gap.len);
    const cplx att = std::polar(1.0, gap.lo + frac_att * gap.len);
    double T = initial_length;
    const double margin = 0.05 * gap.len;
    for (int tries = 0; tries < 48; ++tries, T *= 1.5) {
        GeneratorSpec g = make_generator(hyperbolic_from_endpoints(att, rep, T), level);
        if (arcs_fit_gap(g, gap, margin) && own_arcs_separated(g, margin)) return g;
    }
    throw std::runtime_error("generator_in_gap: could not fit ford arcs inside the gap");
}

GeneratorSpec parabolic_in_gap(const Arc& gap, double angle, int level,
                               double initial_strength) {
    double s = initial_strength;
    const double margin = 0.05 * gap.len;
    for (int tries = 0; tries < 48; ++tries, s *= 1.5) {
        GeneratorSpec g = make_generator(parabolic_at(std::polar(1.0, angle), s), level);
        if (arcs_fit_gap(g, gap, margin)) return g;
    }
    throw std::runtime_error("parabolic_in_gap: could not fit ford arcs inside the gap");
}

SchottkySystem trivial_system() {
    SchottkySystem sys;
    sys.name = "trivial";
    BranchNode root;
    root.territory = Arc::full_circle();
    sys.nodes.push_back(root);
    return sys;
}

SchottkySystem cyclic_system(double c) {
    SchottkySystem sys;
    sys.name = "cyclic";
    sys.gens.push_back(make_generator(real_hyperbolic(c), 1));
    attach_root_nodes(sys, {true, true});
    return sys;
}

SchottkySystem annulus_deck_system(double R) {
    SchottkySystem sys;
    sys.name = "annulus";
    sys.gens.push_back(make_generator(build_annulus_covering(R).deck_generator, 1));
    attach_root_nodes(sys, {true, true});
    return sys;
}

SchottkySystem punctured_cyclic_system() {
    SchottkySystem sys;
    sys.name = "punctured";
    sys.gens.push_back(make_generator(build_punctured_disk_covering().deck_generator, 1));
    attach_root_nodes(sys, {true, true});
    return sys;
}

SchottkySystem pants_system(double T) {
    SchottkySystem sys;
    sys.name = "pants";
    const auto e = [](double deg) { return std::polar(1.0, deg * kPi / 180.0); };
    sys.gens.push_back(make_generator(hyperbolic_from_endpoints(e(135), e(45), T), 1));
    sys.gens.push_back(make_generator(hyperbolic_from_endpoints(e(315), e(225), T), 1));
    attach_root_nodes(sys, {true, true, true});
    return sys;
}

namespace {

// Two infinite hyperbolic branches growing inside designated root classes.
class TwoBranchRule final : public CascadeRule {
  public:
    void extend(SchottkySystem& sys, int level) const override {
        // Branch heads: the deepest non-terminal node of each root subtree.
        std::vector<int> heads;
        for (size_t i = 0; i < sys.nodes.size(); ++i)
            if (!sys.nodes[i].terminal && sys.nodes[i].children.empty())
                heads.push_back(static_cast<int>(i));
        for (int head : heads) {
            const Arc gap = head_gap(sys, head);
            GeneratorSpec g = generator_in_gap(gap, 0.3, 0.7, level);
            g.parent_node = head;
            const int gi = static_cast<int>(sys.gens.size());
            sys.gens.push_back(g);
            const auto [first, second] = ordered_arcs_in_gap(g, gap);
            BranchNode child;
            child.parent = head;
            child.via_generator = gi;
            child.level = level;
            child.terminal = false;  // the branch continues forever
            child.territory = Arc::from_endpoints_ccw(first.lo, second.hi());
            sys.nodes[head].children.push_back(static_cast<int>(sys.nodes.size()));
            sys.nodes.push_back(child);
        }
    }

    bool gap_live(const SchottkySystem& sys, const Arc& gap) const override {
        // Only the current branch-head gaps receive deeper generators.
        for (size_t i = 0; i < sys.nodes.size(); ++i) {
            if (sys.nodes[i].terminal || !sys.nodes[i].children.empty()) continue;
            const Arc hg = head_gap(sys, static_cast<int>(i));
            if (hg.contains(gap.midpoint()) && gap.contains(hg.midpoint())) return true;
        }
        return false;
    }

  private:
    static Arc head_gap(const SchottkySystem& sys, int head) {
        const BranchNode& n = sys.nodes[head];
        if (n.via_generator < 0) {
            // Root class: its widest gap.
            const GapClasses gc = gap_classes(sys);
            int best_gap = -1;
            double best_len = -1.0;
            for (size_t g = 0; g < gc.gaps.size(); ++g) {
                if (gc.gaps[g].degenerate) continue;
                if (!n.territory.contains(gc.gaps[g].arc, 1e-9)) continue;
                if (gc.gaps[g].arc.len > best_len) {
                    best_len = gc.gaps[g].arc.len;
                    best_gap = static_cast<int>(g);
                }
            }
            if (best_gap < 0)
                throw std::logic_error("cascade: root class without a usable gap");
            return gc.gaps[best_gap].arc;
        }
        // Chain node: the middle gap between the via-generator's arcs.
        const GeneratorSpec& g = sys.gens[n.via_generator];
        const auto [first, second] = ordered_arcs_in_gap(g, n.territory);
        return Arc::from_endpoints_ccw(first.hi(), second.lo);
    }
};

// Splits the largest gap with a fresh hyperbolic generator at every level;
// every gap remains live.
class DenseRule final : public CascadeRule {
  public:
    void extend(SchottkySystem& sys, int level) const override {
        const std::vector<Gap> gaps = depth0_gaps(sys);
        int best = -1;
        double best_len = -1.0;
        for (size_t g = 0; g < gaps.size(); ++g) {
            if (gaps[g].degenerate) continue;
            if (gaps[g].arc.len > best_len) {
                best_len = gaps[g].arc.len;
                best = static_cast<int>(g);
            }
        }
        if (best < 0) throw std::logic_error("dense cascade: no gap to split");
        GeneratorSpec g = generator_in_gap(gaps[best].arc, 0.3, 0.7, level);
        // Deepest node whose territory holds the split gap.
        int parent = -1;
        for (size_t i = 0; i < sys.nodes.size(); ++i)
            if (sys.nodes[i].territory.contains(gaps[best].arc.midpoint()) &&
                (parent < 0 || sys.nodes[i].level > sys.nodes[parent].level))
                parent = static_cast<int>(i);
        g.parent_node = parent;
        const int gi = static_cast<int>(sys.gens.size());
        const auto [first, second] = ordered_arcs_in_gap(g, gaps[best].arc);
        sys.gens.push_back(g);
        BranchNode child;
        child.parent = parent;
        child.via_generator = gi;
        child.level = level;
        child.terminal = false;
        child.territory = Arc::from_endpoints_ccw(first.lo, second.hi());
        if (parent >= 0) sys.nodes[parent].children.push_back(static_cast<int>(sys.nodes.size()));
        sys.nodes.push_back(child);
    }

    bool gap_live(const SchottkySystem&, const Arc&) const override { return true; }
};

// Parabolic punctures accumulating on the outer boundary class of the
// annulus; the inner class gap is terminal.
class FatCantorRule final : public CascadeRule {
  public:
    void extend(SchottkySystem& sys, int level) const override {
        // Outer collar node: deepest non-terminal node.
        int head = -1;
        for (size_t i = 0; i < sys.nodes.size(); ++i)
            if (!sys.nodes[i].terminal && sys.nodes[i].children.empty())
                head = static_cast<int>(i);
        if (head < 0) throw std::logic_error("fat-cantor cascade: no live collar node");

        // Largest gap inside the collar territory. Copy the territory: node
        // pushes below may reallocate the vector.
        const std::vector<Gap> gaps = depth0_gaps(sys);
        const Arc terr = sys.nodes[head].territory;
        int best = -1;
        double best_len = -1.0;
        for (size_t g = 0; g < gaps.size(); ++g) {
            if (gaps[g].degenerate) continue;
            if (!terr.contains(gaps[g].arc.midpoint())) continue;
            if (gaps[g].arc.len > best_len) {
                best_len = gaps[g].arc.len;
                best = static_cast<int>(g);
            }
        }
        if (best < 0) throw std::logic_error("fat-cantor cascade: no gap in the collar");
        const Arc gap = gaps[best].arc;
        GeneratorSpec g =
            parabolic_in_gap(gap, normalize_angle(gap.lo + 0.5 * gap.len), level);
        g.parent_node = head;
        const int gi = static_cast<int>(sys.gens.size());
        sys.gens.push_back(g);

        // Puncture child (terminal) plus a continuing collar child.
        const auto [first, second] = ordered_arcs_in_gap(g, gap);
        BranchNode puncture;
        puncture.parent = head;
        puncture.via_generator = gi;
        puncture.level = level;
        puncture.terminal = true;
        puncture.territory = Arc::from_endpoints_ccw(first.lo, second.hi());
        sys.nodes[head].children.push_back(static_cast<int>(sys.nodes.size()));
        sys.nodes.push_back(puncture);

        BranchNode collar;
        collar.parent = head;
        collar.via_generator = -1;
        collar.level = level;
        collar.terminal = false;
        collar.territory = terr;
        sys.nodes[head].children.push_back(static_cast<int>(sys.nodes.size()));
        sys.nodes.push_back(collar);
    }

    bool gap_live(const SchottkySystem& sys, const Arc& gap) const override {
        // Gaps inside the live collar territory keep receiving punctures.
        for (size_t i = 0; i < sys.nodes.size(); ++i)
            if (!sys.nodes[i].terminal && sys.nodes[i].children.empty() &&
                sys.nodes[i].territory.contains(gap.midpoint()))
                return true;
        return false;
    }
};

}  // namespace

SchottkySystem cascade_system(double T) {
    SchottkySystem sys = pants_system(T);
    sys.name = "cascade";
    // First two root classes host the infinite branches.
    sys.nodes[0].terminal = false;
    sys.nodes[1].terminal = false;
    sys.cascade = std::make_shared<TwoBranchRule>();
    return sys;
}

SchottkySystem dense_system() {
    SchottkySystem sys = pants_system();
    sys.name = "dense";
    for (auto& n : sys.nodes) n.terminal = false;
    sys.cascade = std::make_shared<DenseRule>();
    return sys;
}

SchottkySystem fat_cantor_system(double R) {
    SchottkySystem sys = annulus_deck_system(R);
    sys.name = "fat_cantor";
    // The class whose span contains the outer radial direction (theta =
    // 3 pi / 2 under the annulus normalization) hosts the punctures.
    const double outer_dir = 1.5 * kPi;
    for (auto& n : sys.nodes)
        if (n.territory.contains(outer_dir)) n.terminal = false;
    sys.cascade = std::make_shared<FatCantorRule>();
    return sys;
}

ReefGeometry reef_point_geometry(int n_max) {
    ReefGeometry geo;
    geo.name = "reef_point";
    for (int n = 2; n <= n_max; ++n) {  // the n = 1 reef has zero width
        const double r = 1.0 / n;
        const double half = (n - 1) * kPi / n;
        const double offset = (n % 2 == 0) ? kPi : 0.0;  // Arg((-1)^n z) shift
        std::vector<cplx> arc;
        const int samples = 96;
        for (int k = 0; k <= samples; ++k) {
            const double t = -half + 2.0 * half * k / samples;
            arc.push_back(std::polar(r, t + offset));
        }
        geo.polylines.push_back(std::move(arc));
    }
    return geo;
}

ReefGeometry reef_interval_geometry(int n_max) {
    ReefGeometry geo;
    geo.name = "reef_interval";
    geo.polylines.push_back({cplx(-0.25, 0.0), cplx(0.25, 0.0)});  // the interval itself
    for (int n = 1; n <= n_max; ++n) {
        const cplx a = cplx(-0.25, 0.0) - cplx(1.0, 1.0) / double(n);
        const cplx b = cplx(0.25, 0.0) + cplx(1.0, -1.0) / double(n);
        const cplx c = cplx(0.25, 0.0) + cplx(1.0, 1.0) / double(n);
        const cplx d = cplx(-0.25, 0.0) - cplx(1.0, -1.0) / double(n);
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        std::vector<cplx> path{sign * a, sign * b, sign * c, sign * d};
        geo.polylines.push_back(std::move(path));
    }
    return geo;
}

std::optional<SchottkySystem> named_system(const std::string& name) {
    if (name == "trivial") return trivial_system();
    if (name == "cyclic") return cyclic_system();
    if (name == "annulus") return annulus_deck_system();
    if (name == "punctured") return punctured_cyclic_system();
    if (name == "pants") return pants_system();
    if (name == "cascade") return cascade_system();
    if (name == "dense") return dense_system();
    if (name == "fat_cantor") return fat_cantor_system();
    return std::nullopt;
}

}  // namespace bl
