#include "boundarylab/primeends.hpp"

#include <algorithm>
#include <cmath>

namespace bl {

const char* to_string(PrimeEndClass c) {
    switch (c) {
        case PrimeEndClass::Regular: return "regular";
        case PrimeEndClass::Singular: return "singular";
        case PrimeEndClass::Parabolic: return "parabolic";
    }
    return "?";
}

const char* to_string(Impression::Kind k) {
    switch (k) {
        case Impression::Kind::ProperSubset: return "proper-subset";
        case Impression::Kind::WholeComponent: return "whole-component";
        case Impression::Kind::PuncturePoint: return "puncture-point";
    }
    return "?";
}

const char* to_string(TrueCrosscutResult::Verdict v) {
    switch (v) {
        case TrueCrosscutResult::Verdict::CantorLimitSet: return "cantor-limit-set";
        case TrueCrosscutResult::Verdict::NoGapFound: return "no-gap-found";
    }
    return "?";
}

namespace {

double wrap_dist(double a, double b) {
    const double d = std::abs(normalize_angle(a - b));
    return std::min(d, kTwoPi - d);
}

bool arc_fully_contains_some_generator_arc(const SchottkySystem& sys, const Arc& span) {
    for (const auto& g : sys.gens) {
        if (span.contains(g.source_arc, -1e-9) && span.len < kTwoPi - 1e-9 &&
            g.source_arc.len > 1e-9)
            return true;
        if (span.contains(g.target_arc, -1e-9) && span.len < kTwoPi - 1e-9 &&
            g.target_arc.len > 1e-9)
            return true;
    }
    return false;
}

Arc span_between_fixed_points(const DiskAutomorphism& w, double through_angle) {
    FixedPoints fp = fixed_points(w.map);
    const double p1 = normalize_angle(std::arg(fp.points[0].value()));
    const double p2 = normalize_angle(std::arg(fp.points[1].value()));
    const Arc cand = Arc::from_endpoints_ccw(p1, p2);
    if (cand.contains(through_angle)) return cand;
    return Arc::from_endpoints_ccw(p2, p1);
}

}  // namespace

GapClasses gap_classes(const SchottkySystem& sys) {
    GapClasses out;
    out.gaps = depth0_gaps(sys);
    const int n = static_cast<int>(out.gaps.size());
    out.class_of.assign(n, -1);

    if (sys.rank() == 0) {
        // Simply connected: one class covering the whole circle.
        out.class_of.assign(n, 0);
        GapClassInfo info;
        info.gap_ids = {0};
        info.span = Arc::full_circle();
        out.classes.push_back(info);
        return out;
    }

    // The letter whose arc begins at a given angle.
    auto arc_starting_at = [&](double angle) -> std::optional<Letter> {
        for (int k = 0; k < sys.letter_count(); ++k) {
            const Letter l = sys.letter(k);
            if (wrap_dist(sys.arc_of(l).lo, angle) < 1e-7) return l;
        }
        return std::nullopt;
    };
    auto gap_starting_at = [&](double angle) -> int {
        for (int g = 0; g < n; ++g)
            if (!out.gaps[g].degenerate && wrap_dist(out.gaps[g].arc.lo, angle) < 1e-7)
                return g;
        return -1;
    };

    for (int g0 = 0; g0 < n; ++g0) {
        if (out.class_of[g0] >= 0) continue;
        if (out.gaps[g0].degenerate) {
            const int cls = static_cast<int>(out.classes.size());
            out.class_of[g0] = cls;
            GapClassInfo info;
            info.gap_ids = {g0};
            info.puncture = true;
            info.puncture_angle = out.gaps[g0].arc.lo;
            info.peripheral.letters = {{out.gaps[g0].parabolic_gen, +1}};
            info.span = Arc{out.gaps[g0].arc.lo, 0.0};
            out.classes.push_back(info);
            continue;
        }
        // Walk the boundary circle through the pairings.
        const int cls = static_cast<int>(out.classes.size());
        GapClassInfo info;
        std::vector<Letter> jumps;
        DiskAutomorphism holonomy;
        int g = g0;
        for (;;) {
            out.class_of[g] = cls;
            info.gap_ids.push_back(g);
            const double e = out.gaps[g].arc.hi();
            const auto l = arc_starting_at(e);
            if (!l) throw std::logic_error("gap_classes: no arc at gap endpoint");
            const DiskAutomorphism J = sys.map_of(inverse(*l));
            holonomy = compose(J, holonomy);
            jumps.push_back(inverse(*l));
            const double y = map_boundary_angle(J, e);
            const int next = gap_starting_at(y);
            if (next < 0) throw std::logic_error("gap_classes: pairing left the gap set");
            if (next == g0) break;
            g = next;
            if (info.gap_ids.size() > out.gaps.size())
                throw std::logic_error("gap_classes: walk failed to close");
        }
        for (auto it = jumps.rbegin(); it != jumps.rend(); ++it)
            info.peripheral.letters.push_back(*it);

        // Classify the holonomy by its fixed points; the trace of long word
        // products is numerically unusable.
        const FixedPoints fp = fixed_points(holonomy.map);
        if (fp.double_point) {
            const double p = normalize_angle(std::arg(fp.points[0].value()));
            info.span = Arc{p, kTwoPi};
        } else {
            const double mid = out.gaps[g0].arc.midpoint();
            Arc span = span_between_fixed_points(holonomy, mid);
            if (arc_fully_contains_some_generator_arc(sys, span)) {
                // Holonomy composed in the reverse orientation; its axis spans
                // a translate of the class line. Recompose the other way.
                DiskAutomorphism rev;
                for (const Letter& l : jumps) rev = compose(rev, sys.map_of(l));
                span = span_between_fixed_points(rev, mid);
            }
            info.span = span;
        }
        out.classes.push_back(std::move(info));
    }
    return out;
}

PrimeEndResult classify_prime_end(SchottkySystem& sys, double theta, int horizon) {
    const RadialTypeResult rt = radial_type(sys, theta, horizon);
    PrimeEndResult out;
    out.base = BoundaryPoint(theta);
    out.itinerary = rt.coding.itinerary;

    if (rt.tag == RadialTypeTag::Escaping && rt.coding.finite()) {
        out.cls = PrimeEndClass::Regular;
        out.terminal_gap = *rt.coding.terminal_gap;
        const GapClasses gc = gap_classes(sys);
        out.gap_class = gc.class_of.at(out.terminal_gap);
        // Bisection chain inside the terminal region, shrinking dyadically.
        const double t = normalize_angle(theta);
        const double w0 = 1e-2;
        out.chain.at = [t, w0](int n) {
            const double w = w0 * std::pow(0.5, n);
            return Crosscut::geodesic(t - w, t + w);
        };
        return out;
    }
    if (rt.tag == RadialTypeTag::Escaping && rt.parabolic_tail) {
        out.cls = PrimeEndClass::Parabolic;
        const Letter l = rt.coding.itinerary.back();
        DiskAutomorphism W;
        for (size_t i = 0; i + 1 < rt.coding.itinerary.size(); ++i)
            W = compose(W, sys.map_of(rt.coding.itinerary[i]));
        FixedPoints fp = fixed_points(sys.gens[l.gen].map.map);
        const double p = map_boundary_angle(W, normalize_angle(std::arg(fp.points[0].value())));
        out.parabolic_fixed = p;
        out.chain.at = [p](int n) { return Crosscut::horocycle(p, std::pow(0.5, n)); };
        return out;
    }
    throw std::domain_error("classify_prime_end: point not certified escaping at horizon");
}

PrimeEndResult classify_singular_prime_end(SchottkySystem& sys,
                                           const std::vector<Letter>& itinerary,
                                           int /*horizon*/) {
    if (itinerary.empty() || !GroupWord{itinerary}.reduced())
        throw std::invalid_argument("classify_singular_prime_end: need a reduced itinerary");
    int max_level = 0;
    for (const Letter& l : itinerary) {
        if (l.gen >= sys.rank())
            throw std::invalid_argument("classify_singular_prime_end: unknown generator");
        max_level = std::max(max_level, sys.level_of(l));
    }
    // Certify unbounded depth: levels along the itinerary must keep growing.
    std::vector<int> levels;
    for (const Letter& l : itinerary) levels.push_back(sys.level_of(l));
    int best = levels[0];
    bool deepening = true;
    for (size_t i = 1; i < levels.size(); ++i) {
        if (levels[i] > best) best = levels[i];
    }
    deepening = best >= 3 && levels.back() == best;
    if (!deepening)
        throw std::invalid_argument(
            "classify_singular_prime_end: itinerary does not certify unbounded depth");

    PrimeEndResult out;
    out.cls = PrimeEndClass::Singular;
    out.itinerary = itinerary;
    // Nested arc of the itinerary prefix; its midpoint represents the point.
    DiskAutomorphism W;
    for (size_t i = 0; i + 1 < itinerary.size(); ++i) W = compose(W, sys.map_of(itinerary[i]));
    const Arc cell = map_arc(W, sys.arc_of(itinerary.back()));
    out.base = BoundaryPoint(cell.midpoint());

    std::vector<Crosscut> cuts;
    DiskAutomorphism prefix;
    for (size_t i = 0; i < itinerary.size(); ++i) {
        const Arc a = map_arc(prefix, sys.arc_of(itinerary[i]));
        cuts.push_back(Crosscut::geodesic(a.lo, a.hi()));
        prefix = compose(prefix, sys.map_of(itinerary[i]));
    }
    out.chain.at = [cuts](int n) { return cuts.at(std::min<size_t>(n, cuts.size() - 1)); };
    return out;
}

Impression impression_of(SchottkySystem& sys, const PrimeEndResult& pe) {
    Impression out;
    const GapClasses gc = gap_classes(sys);
    switch (pe.cls) {
        case PrimeEndClass::Regular: {
            out.kind = Impression::Kind::ProperSubset;
            out.gap_class = pe.gap_class;
            out.carrier.carrier = AlphaImage::Carrier::OpenArc;
            out.carrier.arc = gc.classes.at(pe.gap_class).span;
            out.address.digits = {pe.gap_class};
            return out;
        }
        case PrimeEndClass::Singular: {
            out.kind = Impression::Kind::WholeComponent;
            AssociatedAddresses assoc = associated_addresses_for(
                sys, CodingStream{pe.itinerary, std::nullopt, std::nullopt, 0,
                                  static_cast<int>(pe.itinerary.size())});
            if (!assoc.matches.empty()) out.address = assoc.matches.front();
            out.carrier.carrier = AlphaImage::Carrier::ClosedArc;
            out.carrier.arc = Arc{pe.base.theta, 0.0};
            return out;
        }
        case PrimeEndClass::Parabolic: {
            out.kind = Impression::Kind::PuncturePoint;
            out.carrier.carrier = AlphaImage::Carrier::Point;
            out.carrier.arc = Arc{pe.parabolic_fixed, 0.0};
            for (size_t c = 0; c < gc.classes.size(); ++c) {
                if (gc.classes[c].puncture &&
                    wrap_dist(gc.classes[c].puncture_angle, pe.parabolic_fixed) < 1e-7)
                    out.gap_class = static_cast<int>(c);
            }
            return out;
        }
    }
    return out;
}

Impression impression(SchottkySystem& sys, double theta, int horizon) {
    const PrimeEndResult pe = classify_prime_end(sys, theta, horizon);
    return impression_of(sys, pe);
}

Impression impression_via_bisection(SchottkySystem& sys, double theta, int horizon) {
    // Shrink symmetric geodesic crosscuts about theta until both endpoints
    // land in one terminal gap; the chain is then admissible with simply
    // connected image, and the impression data stabilizes.
    const GapClasses gc = gap_classes(sys);
    const double t = normalize_angle(theta);
    double w = 0.25;
    for (int k = 0; k < horizon; ++k, w *= 0.5) {
        for (size_t g = 0; g < gc.gaps.size(); ++g) {
            const Gap& gap = gc.gaps[g];
            if (gap.degenerate) continue;
            if (gap.arc.contains(normalize_angle(t - w)) &&
                gap.arc.contains(normalize_angle(t + w)) && gap.arc.contains(t)) {
                Impression out;
                out.kind = Impression::Kind::ProperSubset;
                out.gap_class = gc.class_of[g];
                out.carrier.carrier = AlphaImage::Carrier::OpenArc;
                out.carrier.arc = gc.classes[out.gap_class].span;
                out.address.digits = {out.gap_class};
                return out;
            }
        }
    }
    throw std::domain_error("impression_via_bisection: no stabilizing chain at horizon");
}

AdmissibleCrosscut fundamental_crosscut(const SchottkySystem& sys, Letter l) {
    AdmissibleCrosscut out;
    const Arc& a = sys.arc_of(l);
    out.cut = Crosscut::geodesic(a.lo, a.hi());
    out.witness = AdmissibleCrosscut::Witness::NonContractibleImage;
    out.word.letters = {l};
    return out;
}

RectifiedNeighbourhood rectify(const SchottkySystem& sys, const AdmissibleCrosscut& C,
                               double target_theta, int L, std::size_t word_cap) {
    RectifiedNeighbourhood out;
    out.base = C;
    out.base_arc = C.cut.cutoff_arc();
    const double t = normalize_angle(target_theta);
    if (!out.base_arc.contains(t))
        throw std::invalid_argument("rectify: crosscut does not separate the target");

    // Translate crosscuts under reduced words of length 1..L whose cutoff
    // arcs land strictly inside the base arc.
    std::vector<std::pair<DiskAutomorphism, Letter>> frontier;
    for (int k = 0; k < sys.letter_count(); ++k)
        frontier.push_back({sys.map_of(sys.letter(k)), sys.letter(k)});
    std::size_t count = 0;
    for (int len = 1; len <= L; ++len) {
        std::vector<std::pair<DiskAutomorphism, Letter>> next;
        for (const auto& [m, last] : frontier) {
            const double p1 = map_boundary_angle(m, C.cut.e1.theta);
            const double p2 = map_boundary_angle(m, C.cut.e2.theta);
            if (wrap_dist(p1, p2) > 1e-14) {
                const Arc img = Crosscut::geodesic(p1, p2).cutoff_arc();
                if (out.base_arc.contains(img, 1e-9) && img.len < out.base_arc.len - 1e-12)
                    out.excluded.push_back(img);
            }
            if (len < L) {
                for (int k = 0; k < sys.letter_count(); ++k) {
                    const Letter l = sys.letter(k);
                    if (cancels(last, l)) continue;
                    if (++count > word_cap) throw ResourceLimitError("rectify: word cap");
                    next.push_back({compose(m, sys.map_of(l)), l});
                }
            }
        }
        frontier = std::move(next);
    }
    out.translate_count = static_cast<int>(out.excluded.size());
    std::sort(out.excluded.begin(), out.excluded.end(),
              [](const Arc& a, const Arc& b) { return a.lo < b.lo; });

    // Remainder: descend into the innermost translate arc containing the
    // target, then trim by the nearest non-containing translates.
    Arc current = out.base_arc;
    for (;;) {
        const Arc* deeper = nullptr;
        for (const Arc& e : out.excluded) {
            if (e.len >= current.len - 1e-15) continue;
            if (!current.contains(e, 1e-12) || !e.contains(t)) continue;
            if (!deeper || e.len < deeper->len) deeper = &e;
        }
        if (!deeper) break;
        current = *deeper;
    }
    double lo = current.lo, hi = current.hi();
    for (const Arc& e : out.excluded) {
        if (!current.contains(e, 1e-12) || e.contains(t) || e.len >= current.len - 1e-15)
            continue;
        const double from_lo_e = ccw_gap(current.lo, e.lo);
        const double from_lo_t = ccw_gap(current.lo, t);
        if (from_lo_e + e.len <= from_lo_t) {
            if (ccw_gap(current.lo, e.hi()) > ccw_gap(current.lo, lo)) lo = e.hi();
        } else {
            if (ccw_gap(current.lo, e.lo) < ccw_gap(current.lo, hi)) hi = e.lo;
        }
    }
    out.remainder = Arc::from_endpoints_ccw(lo, hi);
    return out;
}

TrueCrosscutResult detect_true_crosscut(SchottkySystem& sys, int depth) {
    sys.materialize(depth);
    TrueCrosscutResult out;
    out.depth_used = depth;
    const std::vector<Gap> gaps = depth0_gaps(sys);
    double arcs_len = 0.0;
    for (const auto& gen : sys.gens) arcs_len += gen.source_arc.len + gen.target_arc.len;
    out.depth0_cover_length = arcs_len;

    const GapClasses gc = gap_classes(sys);
    for (size_t g = 0; g < gaps.size(); ++g) {
        if (gaps[g].degenerate) continue;
        const bool live = sys.cascade && sys.cascade->gap_live(sys, gaps[g].arc);
        if (!live) {
            out.verdict = TrueCrosscutResult::Verdict::CantorLimitSet;
            out.certificate_gap = gaps[g];
            out.certificate_class = gc.class_of.at(g);
            return out;
        }
    }
    out.verdict = TrueCrosscutResult::Verdict::NoGapFound;
    return out;
}

QuotientCount prime_end_quotient_count(SchottkySystem& sys, int horizon) {
    QuotientCount out;
    out.horizon = horizon;
    if (sys.finite_rank()) {
        const GapClasses gc = gap_classes(sys);
        out.exact = true;
        out.classes = static_cast<int>(gc.classes.size());
        for (const auto& c : gc.classes) out.representatives.push_back(c.gap_ids.front());
        return out;
    }
    out.exact = false;
    for (int level = 1; level <= horizon; ++level) {
        sys.materialize(level);
        const GapClasses gc = gap_classes(sys);
        out.per_level.push_back({level, static_cast<int>(gc.classes.size())});
        out.classes = static_cast<int>(gc.classes.size());
    }
    return out;
}

}  // namespace bl
