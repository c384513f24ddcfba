#include "boundarylab/deck.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bl {

std::pair<Arc, Arc> ford_arcs(const DiskAutomorphism& m) {
    const MoebiusMap& M = m.map;
    if (std::abs(M.c) < 1e-14)
        throw std::invalid_argument("ford_arcs: rotation about 0 has no isometric circle");
    const cplx cs = -M.d / M.c;  // isometric circle of m
    const cplx ct = M.a / M.c;   // isometric circle of m^{-1}
    auto arc_of_circle = [](cplx center) {
        const double half = std::acos(std::min(1.0, 1.0 / std::abs(center)));
        return Arc::from_endpoints_ccw(std::arg(center) - half, std::arg(center) + half);
    };
    return {arc_of_circle(cs), arc_of_circle(ct)};
}

void SchottkySystem::materialize(int level) {
    if (!cascade) return;
    while (materialized_ < level) {
        ++materialized_;
        cascade->extend(*this, materialized_);
    }
}

DiskAutomorphism SchottkySystem::word_map(const GroupWord& w) const {
    DiskAutomorphism m;
    for (Letter l : w.letters) m = compose(m, map_of(l));
    return m;
}

namespace {

double arc_overlap_length(const Arc& a, const Arc& b) {
    const double s = ccw_gap(a.lo, b.lo);
    double total = 0.0;
    for (double shift : {s, s - kTwoPi}) {
        const double lo = std::max(0.0, shift);
        const double hi = std::min(a.len, shift + b.len);
        if (hi > lo) total += hi - lo;
    }
    return total;
}

double parabolic_fixed_angle(const GeneratorSpec& g) {
    FixedPoints fp = fixed_points(g.map.map);
    return normalize_angle(std::arg(fp.points[0].value()));
}

}  // namespace

ValidationResult validate(const SchottkySystem& sys, int level_horizon) {
    ValidationResult out;
    out.level_horizon = level_horizon;
    const double tol = 1e-9;

    std::vector<int> active;
    for (int i = 0; i < sys.rank(); ++i)
        if (sys.gens[i].level <= level_horizon) active.push_back(i);

    for (int i : active) {
        const GeneratorSpec& g = sys.gens[i];
        MapClass cls;
        try {
            cls = classify(g.map);
        } catch (const std::domain_error&) {
            cls = MapClass::Identity;
        }
        if (cls != g.kind || (cls != MapClass::Hyperbolic && cls != MapClass::Parabolic)) {
            out.ok = false;
            out.issues.push_back({ValidationIssue::Kind::BadGeneratorClass, i, -1, {},
                                  "generator is not hyperbolic/parabolic as declared"});
        }
    }

    // Arc disjointness. A parabolic generator's own arcs may share exactly
    // the tangency point at its fixed point.
    for (size_t ii = 0; ii < active.size(); ++ii) {
        for (size_t jj = ii; jj < active.size(); ++jj) {
            const int i = active[ii], j = active[jj];
            const Arc* arcs_i[2] = {&sys.gens[i].source_arc, &sys.gens[i].target_arc};
            const Arc* arcs_j[2] = {&sys.gens[j].source_arc, &sys.gens[j].target_arc};
            for (int u = 0; u < 2; ++u) {
                for (int v = 0; v < 2; ++v) {
                    if (i == j && u >= v) continue;
                    const double ov = arc_overlap_length(*arcs_i[u], *arcs_j[v]);
                    const bool parabolic_tangency =
                        i == j && sys.gens[i].kind == MapClass::Parabolic;
                    if (ov > (parabolic_tangency ? 1e-7 : tol)) {
                        out.ok = false;
                        out.issues.push_back({ValidationIssue::Kind::OverlappingArcs, i, j, {},
                                              "generator arcs overlap"});
                    }
                }
            }
        }
    }

    // Sampled ping-pong: each letter maps the boundary complement of its
    // inverse's arc into its own arc.
    const int n_samples = 64;
    for (int i : active) {
        for (int e : {+1, -1}) {
            const Letter l{i, e};
            const Arc& dom = sys.arc_of(inverse(l));
            const Arc& img = sys.arc_of(l);
            const DiskAutomorphism m = sys.map_of(l);
            const double comp_len = kTwoPi - dom.len;
            for (int k = 1; k < n_samples; ++k) {
                const double t = normalize_angle(dom.hi() + comp_len * k / n_samples);
                if (dom.contains(t, 1e-12)) continue;
                const double image = map_boundary_angle(m, t);
                if (!img.contains(image, 1e-7)) {
                    out.ok = false;
                    out.issues.push_back({ValidationIssue::Kind::PingPongFailure, i, -1,
                                          std::polar(1.0, t), "ping-pong inclusion fails"});
                    break;
                }
            }
        }
    }
    return out;
}

namespace {

struct WordNode {
    DiskAutomorphism m;
    Letter last;
};

// Visit reduced words of length 1..L rooted at a fixed first letter, in BFS
// order. visit(depth, node) is called for every word.
template <typename F>
void enumerate_subtree(const SchottkySystem& sys, Letter first, int L,
                       std::size_t cap, F&& visit) {
    std::vector<WordNode> frontier{{sys.map_of(first), first}};
    visit(1, frontier[0]);
    std::size_t count = 1;
    for (int len = 2; len <= L; ++len) {
        std::vector<WordNode> next;
        next.reserve(frontier.size() * (sys.letter_count() - 1));
        for (const WordNode& node : frontier) {
            for (int k = 0; k < sys.letter_count(); ++k) {
                const Letter l = sys.letter(k);
                if (cancels(node.last, l)) continue;
                WordNode child{compose(node.m, sys.map_of(l)), l};
                visit(len, child);
                if (++count > cap)
                    throw ResourceLimitError("word enumeration exceeded cap");
                next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }
}

}  // namespace

std::vector<cplx> orbit_serial(const SchottkySystem& sys, int L, std::size_t word_cap) {
    std::vector<cplx> pts{sys.basepoint};
    if (L == 0 || sys.rank() == 0) return pts;
    // One bucket per (length, first letter); concatenated in that order.
    const int nl = sys.letter_count();
    std::vector<std::vector<std::vector<cplx>>> buckets(
        nl, std::vector<std::vector<cplx>>(L + 1));
    for (int k = 0; k < nl; ++k) {
        enumerate_subtree(sys, sys.letter(k), L, word_cap,
                          [&](int len, const WordNode& node) {
                              buckets[k][len].push_back(node.m.apply(sys.basepoint));
                          });
    }
    for (int len = 1; len <= L; ++len)
        for (int k = 0; k < nl; ++k)
            pts.insert(pts.end(), buckets[k][len].begin(), buckets[k][len].end());
    return pts;
}

std::vector<cplx> orbit(const SchottkySystem& sys, int L, std::size_t word_cap) {
    std::vector<cplx> pts{sys.basepoint};
    if (L == 0 || sys.rank() == 0) return pts;
    const int nl = sys.letter_count();
    std::vector<std::vector<std::vector<cplx>>> buckets(
        nl, std::vector<std::vector<cplx>>(L + 1));
    std::vector<std::string> errors(nl);
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < nl; ++k) {
        try {
            enumerate_subtree(sys, sys.letter(k), L, word_cap,
                              [&](int len, const WordNode& node) {
                                  buckets[k][len].push_back(node.m.apply(sys.basepoint));
                              });
        } catch (const std::exception& e) {
            errors[k] = e.what();
        }
    }
    for (const auto& e : errors)
        if (!e.empty()) throw ResourceLimitError(e);
    for (int len = 1; len <= L; ++len)
        for (int k = 0; k < nl; ++k)
            pts.insert(pts.end(), buckets[k][len].begin(), buckets[k][len].end());
    return pts;
}

bool LimitSetCover::contains(double theta, double tol) const {
    for (const Arc& a : arcs)
        if (a.contains(theta, tol)) return true;
    return false;
}

namespace {

LimitSetCover cover_impl(const SchottkySystem& sys, int L, std::size_t word_cap,
                         bool parallel) {
    LimitSetCover out;
    out.depth = L;
    if (sys.rank() == 0) return out;
    const int nl = sys.letter_count();
    std::vector<std::vector<Arc>> buckets(std::max(nl, 1));
    auto subtree = [&](int k) {
        std::vector<Arc>& sink = buckets[k];
        if (L == 0) {
            sink.push_back(sys.arc_of(sys.letter(k)));
            return;
        }
        enumerate_subtree(sys, sys.letter(k), L, word_cap,
                          [&](int len, const WordNode& node) {
                              if (len != L) return;
                              for (int j = 0; j < nl; ++j) {
                                  const Letter l = sys.letter(j);
                                  if (cancels(node.last, l)) continue;
                                  sink.push_back(map_arc(node.m, sys.arc_of(l)));
                              }
                          });
    };

    if (parallel) {
        std::vector<std::string> errors(nl);
#pragma omp parallel for schedule(dynamic)
        for (int k = 0; k < nl; ++k) {
            try {
                subtree(k);
            } catch (const std::exception& e) {
                errors[k] = e.what();
            }
        }
        for (const auto& e : errors)
            if (!e.empty()) throw ResourceLimitError(e);
    } else {
        for (int k = 0; k < nl; ++k) subtree(k);
    }

    for (auto& b : buckets) out.arcs.insert(out.arcs.end(), b.begin(), b.end());
    std::sort(out.arcs.begin(), out.arcs.end(),
              [](const Arc& x, const Arc& y) { return x.lo < y.lo; });
    for (const Arc& a : out.arcs) out.total_length += a.len;
    return out;
}

}  // namespace

LimitSetCover limit_set_cover(const SchottkySystem& sys, int L, std::size_t word_cap) {
    return cover_impl(sys, L, word_cap, true);
}

LimitSetCover limit_set_cover_serial(const SchottkySystem& sys, int L,
                                     std::size_t word_cap) {
    return cover_impl(sys, L, word_cap, false);
}

std::vector<Gap> depth0_gaps(const SchottkySystem& sys, double eps) {
    std::vector<Gap> gaps;
    struct Tagged {
        Arc arc;
        int gen;
    };
    std::vector<Tagged> arcs;
    for (int i = 0; i < sys.rank(); ++i) {
        arcs.push_back({sys.gens[i].source_arc, i});
        arcs.push_back({sys.gens[i].target_arc, i});
    }
    if (arcs.empty()) {
        gaps.push_back({Arc::full_circle(), false, -1});
        return gaps;
    }
    std::sort(arcs.begin(), arcs.end(),
              [](const Tagged& x, const Tagged& y) { return x.arc.lo < y.arc.lo; });
    for (size_t k = 0; k < arcs.size(); ++k) {
        const Tagged& cur = arcs[k];
        const Tagged& nxt = arcs[(k + 1) % arcs.size()];
        const double gap_len = ccw_gap(cur.arc.hi(), nxt.arc.lo);
        if (gap_len > eps && gap_len < kTwoPi - eps) {
            gaps.push_back({Arc{cur.arc.hi(), gap_len}, false, -1});
        } else if (cur.gen == nxt.gen && sys.gens[cur.gen].kind == MapClass::Parabolic) {
            gaps.push_back({Arc{parabolic_fixed_angle(sys.gens[cur.gen]), 0.0}, true, cur.gen});
        }
    }
    return gaps;
}

CodingStream code_boundary_point(const SchottkySystem& sys, double theta,
                                 int max_letters, double eps_arc) {
    CodingStream out;
    out.horizon = max_letters;
    double cur = normalize_angle(theta);
    std::vector<Gap> gaps;  // computed lazily on termination
    std::vector<double> history;
    history.reserve(max_letters);

    // Parabolic tangency points, for the fixed-point snap.
    std::vector<std::pair<double, int>> para_fixed;
    for (int i = 0; i < sys.rank(); ++i)
        if (sys.gens[i].kind == MapClass::Parabolic)
            para_fixed.push_back({parabolic_fixed_angle(sys.gens[i]), i});

    auto wrap_dist = [](double a, double b) {
        const double d = std::abs(normalize_angle(a - b));
        return std::min(d, kTwoPi - d);
    };

    for (int step = 0; step < max_letters; ++step) {
        // Cycle detection: the pull-back map is deterministic, so an exact
        // revisit certifies an eventually periodic itinerary.
        for (size_t j = 0; j < history.size(); ++j) {
            if (wrap_dist(history[j], cur) < 1e-11) {
                out.cycle_start = static_cast<int>(j);
                out.cycle_period = static_cast<int>(history.size() - j);
                return out;
            }
        }

        std::optional<Letter> next;
        for (const auto& [pf, gi] : para_fixed) {
            if (wrap_dist(cur, pf) < eps_arc) {
                next = Letter{gi, +1};
                break;
            }
        }
        if (!next) {
            for (int k = 0; k < sys.letter_count(); ++k) {
                const Letter l = sys.letter(k);
                const Arc& a = sys.arc_of(l);
                if (!a.contains(cur)) continue;
                if (wrap_dist(cur, a.lo) < eps_arc || wrap_dist(cur, a.hi()) < eps_arc)
                    throw AmbiguousAtTolerance("boundary point within eps of an arc endpoint");
                next = l;
                break;
            }
        }
        if (!next) {
            if (gaps.empty()) gaps = depth0_gaps(sys);
            for (size_t g = 0; g < gaps.size(); ++g) {
                const Arc& ga = gaps[g].arc;
                if (gaps[g].degenerate || !ga.contains(cur)) continue;
                if (ga.len < kTwoPi - 1e-9 &&
                    (wrap_dist(cur, ga.lo) < eps_arc || wrap_dist(cur, ga.hi()) < eps_arc))
                    throw AmbiguousAtTolerance("boundary point within eps of a gap endpoint");
                out.terminal_gap = static_cast<int>(g);
                return out;
            }
            throw AmbiguousAtTolerance("boundary point not resolvable into arc or gap");
        }
        if (!out.itinerary.empty() && cancels(out.itinerary.back(), *next))
            throw AmbiguousAtTolerance("non-reduced step at tolerance");
        history.push_back(cur);
        out.itinerary.push_back(*next);
        cur = map_boundary_angle(sys.map_of(inverse(*next)), cur);
    }
    return out;
}

bool nt_hit_estimate(const SchottkySystem& sys, double theta, int L, double r,
                     std::size_t word_cap) {
    const std::vector<cplx> pts = orbit_serial(sys, L, word_cap);
    const cplx target = std::polar(1.0, theta);
    for (size_t i = 1; i < pts.size(); ++i) {  // skip the basepoint itself
        if (std::abs(pts[i]) >= 1.0 - 1e-12) continue;  // rounded onto the circle
        if (std::abs(pts[i] - target) > 0.5) continue;
        if (dist_to_ray(pts[i], cplx(0, 0), theta) < r) return true;
    }
    return false;
}

SchottkySystem relevel(const SchottkySystem& sys, const std::function<int(int)>& schedule) {
    SchottkySystem out = sys;
    for (auto& g : out.gens) g.level = schedule(g.level);
    for (auto& n : out.nodes) n.level = schedule(n.level);
    return out;
}

}  // namespace bl
