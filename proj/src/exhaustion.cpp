#include "boundarylab/exhaustion.hpp"

#include <algorithm>
#include <cmath>

namespace bl {

const char* to_string(DepthClassTag t) {
    switch (t) {
        case DepthClassTag::Finite: return "finite";
        case DepthClassTag::Infinite: return "infinite";
        case DepthClassTag::Oscillating: return "oscillating";
        case DepthClassTag::UndecidedAtHorizon: return "undecided-at-horizon";
    }
    return "?";
}

const char* to_string(RadialTypeTag t) {
    switch (t) {
        case RadialTypeTag::Escaping: return "escaping";
        case RadialTypeTag::Bounded: return "bounded";
        case RadialTypeTag::Bungee: return "bungee";
        case RadialTypeTag::Undecided: return "undecided";
    }
    return "?";
}

SymbolicDepths SymbolicDepths::terminated(std::vector<int> pre) {
    SymbolicDepths s;
    s.preamble = std::move(pre);
    s.tail = Tail::Terminated;
    return s;
}

SymbolicDepths SymbolicDepths::periodic(std::vector<int> pre, std::vector<int> period) {
    SymbolicDepths s;
    s.preamble = std::move(pre);
    s.tail = Tail::Periodic;
    s.period = std::move(period);
    return s;
}

SymbolicDepths SymbolicDepths::increasing(std::vector<int> pre) {
    SymbolicDepths s;
    s.preamble = std::move(pre);
    s.tail = Tail::Increasing;
    return s;
}

SymbolicDepths SymbolicDepths::interleaved(std::vector<int> bounded_part) {
    SymbolicDepths s;
    s.tail = Tail::OscillatingInterleave;
    s.period = std::move(bounded_part);
    return s;
}

DepthSequence depths_from_coding(const SchottkySystem& sys, const CodingStream& cs) {
    DepthSequence d;
    d.terminated = cs.finite();
    d.terminal_gap = cs.terminal_gap;
    d.cycle_start = cs.cycle_start;
    d.cycle_period = cs.cycle_period;
    d.horizon = cs.horizon;

    int run = 0;
    for (size_t i = 0; i < cs.itinerary.size(); ++i) {
        const Letter l = cs.itinerary[i];
        const bool parabolic = sys.gens[l.gen].kind == MapClass::Parabolic;
        if (parabolic && i > 0 && cs.itinerary[i - 1] == l)
            ++run;
        else
            run = 0;
        d.entries.push_back(sys.level_of(l) + run);
    }
    if (cs.cycle_start) {
        // A period-one parabolic cycle is the puncture's own itinerary.
        d.parabolic_tail =
            cs.cycle_period == 1 && !cs.itinerary.empty() &&
            sys.gens[cs.itinerary.back().gen].kind == MapClass::Parabolic;
    }
    return d;
}

DepthSequence depth_sequence(const SchottkySystem& sys, double theta, int M) {
    return depths_from_coding(sys, code_boundary_point(sys, theta, M));
}

DepthClassTag classify_depth(const DepthSequence& raw, DepthDiagnostics* diag) {
    if (diag && !raw.entries.empty()) {
        const size_t w = std::min<size_t>(16, raw.entries.size());
        diag->window = static_cast<int>(w);
        diag->tail_min = *std::min_element(raw.entries.end() - w, raw.entries.end());
        diag->tail_max = *std::max_element(raw.entries.end() - w, raw.entries.end());
    }
    if (raw.terminated) return DepthClassTag::Infinite;  // funnel levels diverge
    if (raw.cycle_start)
        return raw.parabolic_tail ? DepthClassTag::Infinite : DepthClassTag::Finite;
    return DepthClassTag::UndecidedAtHorizon;
}

DepthClassTag classify_depth(const SymbolicDepths& s) {
    switch (s.tail) {
        case SymbolicDepths::Tail::Terminated: return DepthClassTag::Infinite;
        case SymbolicDepths::Tail::Periodic: return DepthClassTag::Finite;
        case SymbolicDepths::Tail::Increasing: return DepthClassTag::Infinite;
        case SymbolicDepths::Tail::OscillatingInterleave: return DepthClassTag::Oscillating;
    }
    return DepthClassTag::UndecidedAtHorizon;
}

RadialTypeTag radial_tag_for(DepthClassTag t) {
    switch (t) {
        case DepthClassTag::Finite: return RadialTypeTag::Bounded;
        case DepthClassTag::Infinite: return RadialTypeTag::Escaping;
        case DepthClassTag::Oscillating: return RadialTypeTag::Bungee;
        case DepthClassTag::UndecidedAtHorizon: return RadialTypeTag::Undecided;
    }
    return RadialTypeTag::Undecided;
}

RadialTypeResult radial_type(const SchottkySystem& sys, double theta, int M) {
    RadialTypeResult out;
    out.coding = code_boundary_point(sys, theta, M);
    out.depths = depths_from_coding(sys, out.coding);
    out.depth_class = classify_depth(out.depths);
    out.parabolic_tail = out.depths.parabolic_tail;
    out.tag = radial_tag_for(out.depth_class);
    return out;
}

namespace {

std::vector<int> root_nodes(const SchottkySystem& sys) {
    std::vector<int> roots;
    for (size_t i = 0; i < sys.nodes.size(); ++i)
        if (sys.nodes[i].parent < 0) roots.push_back(static_cast<int>(i));
    return roots;
}

}  // namespace

std::vector<Letter> branch_letters(SchottkySystem& sys, const BoundaryAddress& addr,
                                   int max_letters) {
    std::vector<Letter> letters;
    const std::vector<int> roots = root_nodes(sys);
    if (addr.digits.empty()) return letters;
    int node = roots.at(addr.digits[0]);
    for (size_t k = 1; k < addr.digits.size() && static_cast<int>(letters.size()) < max_letters;
         ++k) {
        sys.materialize(sys.nodes[node].level + 1);
        node = sys.nodes[node].children.at(addr.digits[k]);
        if (sys.nodes[node].via_generator >= 0)
            letters.push_back({sys.nodes[node].via_generator, +1});
    }
    // Extend along first children while the branch continues.
    while (static_cast<int>(letters.size()) < max_letters) {
        sys.materialize(sys.nodes[node].level + 1);
        if (sys.nodes[node].children.empty()) break;
        node = sys.nodes[node].children.front();
        if (sys.nodes[node].via_generator >= 0)
            letters.push_back({sys.nodes[node].via_generator, +1});
    }
    return letters;
}

AlphaImage alpha_image(SchottkySystem& sys, const BoundaryAddress& addr,
                       const std::vector<GroupWord>& lift_choices, int horizon) {
    AlphaImage out;
    out.address = addr;
    const std::vector<int> roots = root_nodes(sys);
    int node = roots.at(addr.digits.at(0));
    DiskAutomorphism W;
    Arc stage = sys.nodes[node].territory;
    out.stage_lengths.push_back(stage.len);

    size_t digit = 1;
    for (int step = 0; step < horizon; ++step) {
        sys.materialize(sys.nodes[node].level + 1);
        const BranchNode& bn = sys.nodes[node];
        if (bn.children.empty()) break;
        int child;
        if (digit < addr.digits.size()) {
            child = bn.children.at(addr.digits[digit]);
            ++digit;
        } else {
            child = bn.children.front();  // default continuation
        }
        if (step < static_cast<int>(lift_choices.size()) &&
            !lift_choices[step].letters.empty()) {
            if (!lift_choices[step].reduced())
                throw std::invalid_argument("alpha_image: lift choice not reduced");
            W = compose(W, sys.word_map(lift_choices[step]));
        }
        const Arc next = map_arc(W, sys.nodes[child].territory);
        if (!stage.contains(next, 1e-7))
            throw std::invalid_argument("alpha_image: non-nested lift choices");
        stage = next;
        out.stage_lengths.push_back(stage.len);
        node = child;
    }

    const BranchNode& last = sys.nodes[node];
    const bool is_terminal = last.terminal && last.children.empty();
    if (is_terminal && last.via_generator >= 0 &&
        sys.gens[last.via_generator].kind == MapClass::Parabolic) {
        FixedPoints fp = fixed_points(sys.gens[last.via_generator].map.map);
        const double p = normalize_angle(std::arg(fp.points[0].value()));
        out.carrier = AlphaImage::Carrier::Point;
        out.arc = Arc{map_boundary_angle(W, p), 0.0};
        return out;
    }
    constexpr double eps_point = 1e-9;
    if (is_terminal) {
        out.carrier = AlphaImage::Carrier::OpenArc;
        out.arc = stage;
        return out;
    }
    out.carrier = stage.len < eps_point ? AlphaImage::Carrier::Point
                                        : AlphaImage::Carrier::ClosedArc;
    out.arc = stage;
    return out;
}

AssociatedAddresses associated_addresses_for(SchottkySystem& sys, const CodingStream& cs) {
    AssociatedAddresses out;
    const std::vector<int> roots = root_nodes(sys);

    auto root_of_gen = [&](int gen) {
        int node = sys.gens[gen].parent_node;
        if (node < 0) return -1;
        while (sys.nodes[node].parent >= 0) node = sys.nodes[node].parent;
        return node;
    };

    std::vector<bool> root_touched(roots.size(), false);
    for (const Letter& l : cs.itinerary) {
        const int r = root_of_gen(l.gen);
        for (size_t i = 0; i < roots.size(); ++i)
            if (roots[i] == r) root_touched[i] = true;
    }

    for (size_t ri = 0; ri < roots.size(); ++ri) {
        BoundaryAddress addr;
        addr.digits.push_back(static_cast<int>(ri));
        int node = roots[ri];
        size_t pos = 0;
        for (;;) {
            const auto& ch = sys.nodes[node].children;
            int advanced = -1, child_digit = -1;
            for (size_t c = 0; c < ch.size() && advanced < 0; ++c) {
                const int vg = sys.nodes[ch[c]].via_generator;
                if (vg < 0) continue;
                for (size_t p = pos; p < cs.itinerary.size(); ++p) {
                    if (cs.itinerary[p].gen == vg) {
                        advanced = static_cast<int>(p);
                        child_digit = static_cast<int>(c);
                        break;
                    }
                }
            }
            if (advanced < 0) break;
            addr.digits.push_back(child_digit);
            node = sys.nodes[node].children[child_digit];
            pos = advanced + 1;
        }
        if (addr.digits.size() > 1)
            out.matches.push_back(addr);
        else if (root_touched[ri])
            out.root_prefixes.push_back(addr);
    }
    return out;
}

AssociatedAddresses associated_addresses(SchottkySystem& sys, double theta, int M) {
    return associated_addresses_for(sys, code_boundary_point(sys, theta, M));
}

BungeePoint construct_bungee_point(SchottkySystem& sys,
                                   const std::vector<BoundaryAddress>& addrs,
                                   int horizon, int variant) {
    if (addrs.empty())
        throw std::invalid_argument("construct_bungee_point: need at least one address");
    BungeePoint out;
    out.addresses = addrs;

    std::vector<std::vector<Letter>> chains;
    for (const auto& a : addrs) {
        auto ch = branch_letters(sys, a, horizon + 1);
        if (static_cast<int>(ch.size()) < (horizon + static_cast<int>(addrs.size()) - 1) /
                                              static_cast<int>(addrs.size()))
            throw std::invalid_argument(
                "construct_bungee_point: address branch terminates before the horizon");
        chains.push_back(std::move(ch));
    }

    const bool alternating = addrs.size() >= 2;
    std::vector<size_t> progress(addrs.size(), 0);
    std::vector<Letter>& itin = out.itinerary;

    auto pick_connector = [&](Letter prev, Letter next_branch) -> Letter {
        int skipped = 0;
        for (int k = 0; k < sys.letter_count(); ++k) {
            const Letter c = sys.letter(k);
            if (sys.level_of(c) != 1) continue;
            if (!itin.empty() && cancels(prev, c)) continue;
            if (cancels(c, next_branch)) continue;
            if (skipped < variant) {
                ++skipped;
                continue;
            }
            return c;
        }
        throw std::invalid_argument("construct_bungee_point: no valid connector letter");
    };

    for (int r = 0; r < horizon; ++r) {
        const size_t branch = r % addrs.size();
        if (progress[branch] >= chains[branch].size()) break;
        const Letter next = chains[branch][progress[branch]++];
        if (alternating) {
            const Letter prev = itin.empty() ? Letter{-1, 0} : itin.back();
            itin.push_back(pick_connector(prev, next));
        } else if (!itin.empty() && cancels(itin.back(), next)) {
            itin.push_back(pick_connector(itin.back(), next));
        }
        itin.push_back(next);
    }
    if (!GroupWord{itin}.reduced())
        throw std::logic_error("construct_bungee_point: produced a non-reduced word");

    // Nested output interval: image of the last letter's arc under the prefix.
    DiskAutomorphism W;
    for (size_t i = 0; i + 1 < itin.size(); ++i) W = compose(W, sys.map_of(itin[i]));
    out.interval = map_arc(W, sys.arc_of(itin.back()));

    if (alternating)
        out.symbolic = SymbolicDepths::interleaved({1});
    else {
        std::vector<int> levels;
        for (const Letter& l : itin) levels.push_back(sys.level_of(l));
        out.symbolic = SymbolicDepths::increasing(levels);
    }
    return out;
}

}  // namespace bl
